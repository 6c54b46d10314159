#pragma once

#include <functional>
#include <string>
#include <utility>

#include "spline.hpp"

namespace radial_tps {

/// A radial data function on [0, inf) with analytic first and second
/// derivatives for r > 0.
struct DataProfile {
    std::string name;
    std::function<double(double)> value;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    double value_at_zero = 0.0;

    double operator()(double r) const { return r == 0.0 ? value_at_zero : value(r); }
};

inline DataProfile as_profile(const DilateModel& model, std::string name = "spline") {
    return DataProfile{std::move(name),
                       [model](double r) { return model(r); },
                       [model](double r) { return model.derivative(r, 1); },
                       [model](double r) { return model.derivative(r, 2); },
                       model.c()};
}

inline DataProfile operator+(const DataProfile& f, const DataProfile& g) {
    return DataProfile{f.name + "+" + g.name,
                       [f, g](double r) { return f.value(r) + g.value(r); },
                       [f, g](double r) { return f.d1(r) + g.d1(r); },
                       [f, g](double r) { return f.d2(r) + g.d2(r); },
                       f.value_at_zero + g.value_at_zero};
}

inline DataProfile scaled(const DataProfile& f, double t) {
    return DataProfile{f.name,
                       [f, t](double r) { return t * f.value(r); },
                       [f, t](double r) { return t * f.d1(r); },
                       [f, t](double r) { return t * f.d2(r); },
                       t * f.value_at_zero};
}

}  // namespace radial_tps
