#include "twoshock/numerics.hpp"

#include <cmath>

#include <boost/math/statistics/linear_regression.hpp>

#include <stdexcept>

namespace twoshock {

double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += x[k];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

double trapezoid(const std::vector<double>& f, double dx) {
    if (f.size() < 2) return 0.0;
    double inner = pairwise_sum(f.data() + 1, f.size() - 2);
    return dx * (inner + 0.5 * (f.front() + f.back()));
}

void LogSum::add(double l) {
    if (l == -std::numeric_limits<double>::infinity()) return;
    if (l <= max_) {
        sum_ += std::exp(l - max_);
    } else {
        sum_ = sum_ * std::exp(max_ - l) + 1.0;
        max_ = l;
    }
}

double LogSum::value() const {
    if (sum_ == 0.0) return -std::numeric_limits<double>::infinity();
    return max_ + std::log(sum_);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 paired samples");
    auto [c0, c1, r2] = boost::math::statistics::simple_ordinary_least_squares_with_R_squared(x, y);
    return {c0, c1, r2};
}

}  // namespace twoshock
