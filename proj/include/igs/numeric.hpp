#pragma once

#include <cmath>

namespace igs {

// Neumaier variant of compensated summation. Statistics over millions of
// RR sets add terms of magnitude ~1/n; the compensation keeps the
// accumulated error independent of the term count.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace igs
