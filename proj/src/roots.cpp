#include "pointkg/roots.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace pointkg {

namespace {

using Poly = std::vector<long double>;

void trim(Poly& p) {
    long double scale = 0.0L;
    for (auto c : p) scale = std::max(scale, std::fabs(c));
    while (p.size() > 1 && std::fabs(p.back()) <= 1e-15L * scale) p.pop_back();
}

long double eval(const Poly& p, long double x) {
    long double acc = 0.0L;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {0.0L};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<long double>(i) * p[i];
    return d;
}

// Remainder of num / den.
Poly remainder(Poly num, const Poly& den) {
    const std::size_t dd = den.size() - 1;
    while (num.size() - 1 >= dd && num.size() > 1) {
        const long double f = num.back() / den.back();
        const std::size_t shift = num.size() - 1 - dd;
        for (std::size_t i = 0; i <= dd; ++i) num[shift + i] -= f * den[i];
        num.pop_back();
        if (num.empty()) return {0.0L};
    }
    trim(num);
    return num;
}

bool is_zero(const Poly& p) {
    return p.size() == 1 && p[0] == 0.0L;
}

std::vector<Poly> sturm_chain(const std::vector<double>& coeffs) {
    Poly p(coeffs.begin(), coeffs.end());
    trim(p);
    std::vector<Poly> chain{p};
    if (p.size() <= 1) return chain;
    chain.push_back(derivative(p));
    while (chain.back().size() > 1) {
        Poly r = remainder(chain[chain.size() - 2], chain.back());
        if (is_zero(r)) break;
        // Normalise magnitude; the sign is what matters.
        long double scale = 0.0L;
        for (auto c : r) scale = std::max(scale, std::fabs(c));
        if (scale == 0.0L) break;
        for (auto& c : r) c = -c / scale;
        chain.push_back(std::move(r));
    }
    return chain;
}

int sign_changes(const std::vector<Poly>& chain, long double x) {
    int changes = 0;
    int prev = 0;
    for (const auto& p : chain) {
        const long double v = eval(p, x);
        const int s = (v > 0.0L) - (v < 0.0L);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

}  // namespace

int sturm_count(const std::vector<double>& coeffs, double a, double b) {
    const auto chain = sturm_chain(coeffs);
    return sign_changes(chain, a) - sign_changes(chain, b);
}

std::vector<double> nonnegative_real_roots(const std::vector<double>& coeffs, double zero_tol) {
    Poly p(coeffs.begin(), coeffs.end());
    trim(p);
    if (p.size() <= 1) return {};
    const auto chain = sturm_chain(coeffs);

    // Cauchy bound on root magnitude.
    long double bound = 0.0L;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        bound = std::max(bound, std::fabs(p[i] / p.back()));
    }
    bound += 1.0L;

    std::vector<double> roots;
    const long double lo0 = -static_cast<long double>(zero_tol);
    std::vector<std::pair<long double, long double>> stack{{lo0, bound}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        const int n = sign_changes(chain, a) - sign_changes(chain, b);
        if (n <= 0) continue;
        const long double width = b - a;
        if (n > 1 && width > 1e-17L * (1.0L + std::fabs(b))) {
            const long double mid = 0.5L * (a + b);
            stack.emplace_back(mid, b);
            stack.emplace_back(a, mid);
            continue;
        }
        // One distinct root in (a, b]: bisect on the Sturm count, which also
        // handles roots of even multiplicity without a sign change.
        for (int it = 0; it < 200 && (b - a) > 1e-19L * (1.0L + std::fabs(b)); ++it) {
            const long double mid = 0.5L * (a + b);
            if (sign_changes(chain, a) - sign_changes(chain, mid) > 0) {
                b = mid;
            } else {
                a = mid;
            }
        }
        const long double r = 0.5L * (a + b);
        roots.push_back(std::fabs(r) <= zero_tol ? 0.0 : static_cast<double>(std::max(r, 0.0L)));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

}  // namespace pointkg
