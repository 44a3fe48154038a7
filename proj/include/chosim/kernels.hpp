#pragma once

#include <cstddef>
#include <string>

namespace chosim::kernels {

/// Batched per-beam RSRP: for each beam boresight, wraps the off-boresight
/// angle, applies the parabolic pattern with front-to-back clamp and adds the
/// beam-independent link budget.
///
///   out[i] = max(base_db + max_gain - min(12*(dtheta_i/hpbw)^2, f2b), floor_dbm)
///
/// `base_db` carries tx power - path loss + shadowing for the link.
using BeamRsrpFn = void (*)(const double* boresight_deg, std::size_t n,
                            double direction_deg, double hpbw_deg,
                            double max_gain_dbi, double front_to_back_db,
                            double base_db, double floor_dbm, double* out_dbm);

/// In-place exponential smoothing: filt[i] = (1-a)*filt[i] + a*sample[i].
using EmaFilterFn = void (*)(double* filt, const double* sample, std::size_t n, double a);

void beam_rsrp_scalar(const double* boresight_deg, std::size_t n, double direction_deg,
                      double hpbw_deg, double max_gain_dbi, double front_to_back_db,
                      double base_db, double floor_dbm, double* out_dbm);
void ema_filter_scalar(double* filt, const double* sample, std::size_t n, double a);

#if defined(__x86_64__) || defined(_M_X64)
void beam_rsrp_avx2(const double* boresight_deg, std::size_t n, double direction_deg,
                    double hpbw_deg, double max_gain_dbi, double front_to_back_db,
                    double base_db, double floor_dbm, double* out_dbm);
void ema_filter_avx2(double* filt, const double* sample, std::size_t n, double a);
bool avx2_available();
#endif

struct KernelSet {
    BeamRsrpFn beam_rsrp;
    EmaFilterFn ema_filter;
    const char* name;
};

/// Runtime-selected kernel set. Picks the widest supported variant; the
/// CHOSIM_KERNEL environment variable ("scalar", "avx2") overrides.
const KernelSet& active();

/// Kernel set by name, for equivalence tests. Throws on unknown/unsupported.
const KernelSet& by_name(const std::string& name);

}  // namespace chosim::kernels
