#include "inspectruin/phasefit.hpp"

#include <cmath>
#include <stdexcept>

namespace inspectruin {

PhaseFit fit_two_moment(double target_mean, double target_variance) {
    if (!(target_mean > 0.0) || !(target_variance > 0.0))
        throw std::invalid_argument("fit_two_moment requires positive mean and variance");
    const double cv2 = target_variance / (target_mean * target_mean);
    PhaseFit fit{target_mean, target_variance, Exponential{1.0 / target_mean}};

    if (cv2 > 1.0) {
        const double p1 = 0.5 * (1.0 + std::sqrt((cv2 - 1.0) / (cv2 + 1.0)));
        const double p2 = 1.0 - p1;
        fit.result = Hyperexponential{{p1, p2}, {2.0 * p1 / target_mean, 2.0 * p2 / target_mean}};
    } else if (cv2 < 1.0) {
        // 1/(k+1) <= cv2 <= 1/k picks the shape pair; ties resolve to smaller k.
        int k = static_cast<int>(std::ceil(1.0 / cv2)) - 1;
        if (k < 1) k = 1;
        double p = ((k + 1.0) * cv2 - std::sqrt((k + 1.0) * (1.0 - k * cv2))) / (cv2 + 1.0);
        if (p < 0.0) p = 0.0;
        if (p > 1.0) p = 1.0;
        const double omega = (k + 1.0 - p) / target_mean;
        if (p <= 1e-12)
            fit.result = Erlang{k + 1, omega};
        else if (1.0 - p <= 1e-12)
            fit.result = Erlang{k, omega};
        else
            fit.result = HyperErlang{{k, k + 1}, {p, 1.0 - p}, omega};
    }

    const double got_mean = mean(fit.result);
    const double got_var = variance(fit.result);
    if (std::abs(got_mean - target_mean) > 1e-12 * target_mean ||
        std::abs(got_var - target_variance) > 1e-10 * target_variance)
        throw std::runtime_error("fit_two_moment: moment round-trip failed");
    return fit;
}

}  // namespace inspectruin
