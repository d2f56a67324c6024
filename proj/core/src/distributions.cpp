#include "hurst/distributions.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>

namespace hurst::dist {

double normal_cdf(double z) { return boost::math::cdf(boost::math::normal_distribution<>(), z); }

double normal_two_sided_p(double z) {
    const double tail = boost::math::cdf(boost::math::complement(boost::math::normal_distribution<>(), std::abs(z)));
    return std::min(1.0, 2.0 * tail);
}

double normal_quantile(double p) { return boost::math::quantile(boost::math::normal_distribution<>(), p); }

double f_upper_tail(double f, double d1, double d2) {
    if (std::isinf(f)) return 0.0;
    if (f <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::fisher_f_distribution<>(d1, d2), f));
}

double chi_squared_upper_tail(double x, double df) {
    if (std::isinf(x)) return 0.0;
    if (x <= 0.0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<>(df), x));
}

}  // namespace hurst::dist
