#pragma once

#include <vector>

#include "bai/instance.hpp"

namespace bai::test {

inline BanditInstance gauss(std::vector<double> means, std::vector<double> variances,
                            std::size_t m = 1) {
    return BanditInstance::gaussian(means, variances, m);
}

inline BanditInstance gauss2(double mu1, double mu2, double var1 = 0.25, double var2 = 0.25) {
    return gauss({mu1, mu2}, {var1, var2});
}

inline BanditInstance bern(std::vector<double> means, std::size_t m = 1) {
    return BanditInstance::bernoulli(means, m);
}

inline BanditInstance easy_gaussian() { return gauss2(0.5, 0.0); }

}  // namespace bai::test
