#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace twoshock {

// Fixed-order pairwise summation; identical bits for identical input.
double pairwise_sum(const double* x, std::size_t n);
inline double pairwise_sum(const std::vector<double>& x) { return pairwise_sum(x.data(), x.size()); }

// Trapezoid rule on a uniform grid.
double trapezoid(const std::vector<double>& f, double dx);

// Streaming log(sum exp(l_k)); -inf when empty.
class LogSum {
public:
    void add(double l);
    double value() const;

private:
    double max_ = -std::numeric_limits<double>::infinity();
    double sum_ = 0.0;
};

struct LineFit {
    double intercept = 0;
    double slope = 0;
    double r_squared = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace twoshock
