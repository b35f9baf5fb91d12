#include "pointkg/snapshot.hpp"

#include <cmath>

#include "pointkg/errors.hpp"

namespace pointkg {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void FieldSnapshot::validate() const {
    if (r.empty()) throw InputError("snapshot grid is empty");
    if (psi.size() != r.size() || psi_dot.size() != r.size()) {
        throw InputError("snapshot sample count does not match grid size");
    }
    if (!(r.front() > 0.0)) throw InputError("snapshot grid must start at r > 0");
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!std::isfinite(r[i]) || (i > 0 && !(r[i] > r[i - 1]))) {
            throw InputError("snapshot grid must be finite and strictly increasing");
        }
        if (!finite(psi[i]) || !finite(psi_dot[i])) {
            throw InputError("snapshot has non-finite samples at r = " + std::to_string(r[i]));
        }
    }
    if (!finite(zeta) || !finite(eta) || !std::isfinite(t)) {
        throw InputError("snapshot has non-finite singular coefficients");
    }
}

}  // namespace pointkg
