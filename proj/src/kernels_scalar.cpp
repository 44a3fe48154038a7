#include "chosim/kernels.hpp"

#include <cmath>

namespace chosim::kernels {

// Reference implementation. Operation order matters: the SIMD variants mirror
// it exactly so results are bit-identical across lanes.
void beam_rsrp_scalar(const double* boresight_deg, std::size_t n, double direction_deg,
                      double hpbw_deg, double max_gain_dbi, double front_to_back_db,
                      double base_db, double floor_dbm, double* out_dbm) {
    const double inv_hpbw = 1.0 / hpbw_deg;
    const double inv_360 = 1.0 / 360.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = direction_deg - boresight_deg[i];
        double w = d - 360.0 * std::nearbyint(d * inv_360);
        if (w <= -180.0) w += 360.0;
        double t = w * inv_hpbw;
        double att = (t * t) * 12.0;
        att = std::fmin(att, front_to_back_db);
        double v = base_db + (max_gain_dbi - att);
        out_dbm[i] = std::fmax(v, floor_dbm);
    }
}

void ema_filter_scalar(double* filt, const double* sample, std::size_t n, double a) {
    const double b = 1.0 - a;
    for (std::size_t i = 0; i < n; ++i) {
        filt[i] = b * filt[i] + a * sample[i];
    }
}

}  // namespace chosim::kernels
