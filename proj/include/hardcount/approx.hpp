#ifndef HARDCOUNT_APPROX_HPP
#define HARDCOUNT_APPROX_HPP

#include <complex>

namespace hardcount {

// A value with a certified error envelope: value = r e^{i theta} truth + z3
// with e^{-rel_err} <= r <= e^{rel_err}, |theta| <= rel_err, |z3| <= add_err.
struct ApproxValue {
    std::complex<double> value;
    double rel_err = 0.0;
    double add_err = 0.0;
};

} // namespace hardcount

#endif
