#include "effham/zeta.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace effham {

namespace {
std::vector<Rational> g_bernoulli{Rational(1)};  // B_0
std::mutex g_bernoulli_mutex;
}  // namespace

Rational bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    while (g_bernoulli.size() <= n) {
        unsigned m = static_cast<unsigned>(g_bernoulli.size());
        // sum_{k=0..m} C(m+1,k) B_k = 0  =>  B_m = -sum_{k<m} C(m+1,k) B_k / C(m+1,m)
        Rational acc = 0;
        for (unsigned k = 0; k < m; ++k) acc += Rational(binomial(m + 1, k)) * g_bernoulli[k];
        g_bernoulli.push_back(-acc / Rational(m + 1));
    }
    return g_bernoulli[n];
}

Rational zeta_even_coeff(unsigned k) {
    if (k == 0) throw std::domain_error("zeta_even_coeff: k must be >= 1");
    Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
    return sign * bernoulli(2 * k) * Rational(2).pow(static_cast<int>(2 * k - 1)) /
           Rational(factorial(2 * k));
}

}  // namespace effham
