#include "chosim/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace chosim::kernels {

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

// Same operation order as the scalar kernel; mul+add kept separate (no FMA)
// so outputs are bit-identical with the reference.
void beam_rsrp_avx2(const double* boresight_deg, std::size_t n, double direction_deg,
                    double hpbw_deg, double max_gain_dbi, double front_to_back_db,
                    double base_db, double floor_dbm, double* out_dbm) {
    const __m256d dir = _mm256_set1_pd(direction_deg);
    const __m256d inv_hpbw = _mm256_set1_pd(1.0 / hpbw_deg);
    const __m256d inv_360 = _mm256_set1_pd(1.0 / 360.0);
    const __m256d c360 = _mm256_set1_pd(360.0);
    const __m256d c180n = _mm256_set1_pd(-180.0);
    const __m256d c12 = _mm256_set1_pd(12.0);
    const __m256d f2b = _mm256_set1_pd(front_to_back_db);
    const __m256d gain = _mm256_set1_pd(max_gain_dbi);
    const __m256d base = _mm256_set1_pd(base_db);
    const __m256d floorv = _mm256_set1_pd(floor_dbm);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(dir, _mm256_loadu_pd(boresight_deg + i));
        __m256d k = _mm256_round_pd(_mm256_mul_pd(d, inv_360),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
        __m256d w = _mm256_sub_pd(d, _mm256_mul_pd(c360, k));
        __m256d le = _mm256_cmp_pd(w, c180n, _CMP_LE_OQ);
        w = _mm256_add_pd(w, _mm256_and_pd(le, c360));
        __m256d t = _mm256_mul_pd(w, inv_hpbw);
        __m256d att = _mm256_mul_pd(_mm256_mul_pd(t, t), c12);
        att = _mm256_min_pd(att, f2b);
        __m256d v = _mm256_add_pd(base, _mm256_sub_pd(gain, att));
        _mm256_storeu_pd(out_dbm + i, _mm256_max_pd(v, floorv));
    }
    if (i < n) {
        beam_rsrp_scalar(boresight_deg + i, n - i, direction_deg, hpbw_deg, max_gain_dbi,
                         front_to_back_db, base_db, floor_dbm, out_dbm + i);
    }
}

void ema_filter_avx2(double* filt, const double* sample, std::size_t n, double a) {
    const __m256d av = _mm256_set1_pd(a);
    const __m256d bv = _mm256_set1_pd(1.0 - a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d f = _mm256_mul_pd(bv, _mm256_loadu_pd(filt + i));
        __m256d s = _mm256_mul_pd(av, _mm256_loadu_pd(sample + i));
        _mm256_storeu_pd(filt + i, _mm256_add_pd(f, s));
    }
    if (i < n) {
        ema_filter_scalar(filt + i, sample + i, n - i, a);
    }
}

}  // namespace chosim::kernels

#endif
