#include <doctest.h>

#include <random>
#include <vector>

#include "chosim/deployment.hpp"
#include "chosim/kernels.hpp"
#include "chosim/radio.hpp"

using namespace chosim;

TEST_CASE("scalar kernel matches the antenna gain reference") {
    Beam beam;
    beam.hpbw_deg = 15.0;
    beam.max_gain_dbi = 15.0;
    beam.front_to_back_db = 25.0;
    std::vector<double> bores = {-52.5, -37.5, -22.5, -7.5, 7.5, 22.5, 37.5, 52.5};
    std::vector<double> out(bores.size());
    const double base = -120.0;
    kernels::beam_rsrp_scalar(bores.data(), bores.size(), 33.0, 15.0, 15.0, 25.0, base,
                              -300.0, out.data());
    for (std::size_t i = 0; i < bores.size(); ++i) {
        beam.boresight_azimuth_deg = bores[i];
        CHECK(out[i] == doctest::Approx(base + antenna_gain(beam, 33.0)).epsilon(1e-12));
    }
    // Floor clip applies.
    kernels::beam_rsrp_scalar(bores.data(), bores.size(), 33.0, 15.0, 15.0, 25.0, base,
                              -100.0, out.data());
    for (double v : out) CHECK(v >= -100.0);
}

TEST_CASE("scalar ema matches l3_filter") {
    std::vector<double> filt = {-80.0, -90.0, -70.0};
    const std::vector<double> sample = {-70.0, -95.0, -70.0};
    const double a = l3_coefficient(4);
    std::vector<double> expect(filt.size());
    for (std::size_t i = 0; i < filt.size(); ++i) expect[i] = l3_filter(filt[i], sample[i], 4);
    kernels::ema_filter_scalar(filt.data(), sample.data(), filt.size(), a);
    for (std::size_t i = 0; i < filt.size(); ++i)
        CHECK(filt[i] == doctest::Approx(expect[i]).epsilon(1e-15));
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernels are bit-identical to scalar") {
    if (!kernels::avx2_available()) {
        MESSAGE("AVX2 not available, skipping");
        return;
    }
    std::mt19937_64 gen(777);
    std::uniform_real_distribution<double> ang(-720.0, 720.0);
    std::uniform_real_distribution<double> db(-150.0, 0.0);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + gen() % 13;  // exercises vector body and tail
        std::vector<double> bores(n), out_s(n), out_v(n);
        for (double& b : bores) b = ang(gen);
        const double dir = ang(gen);
        const double hpbw = 1.0 + std::abs(ang(gen)) / 20.0;
        const double gain = std::abs(db(gen)) / 10.0;
        const double f2b = 5.0 + std::abs(db(gen)) / 5.0;
        const double base = db(gen);
        const double floor = -160.0;
        kernels::beam_rsrp_scalar(bores.data(), n, dir, hpbw, gain, f2b, base, floor,
                                  out_s.data());
        kernels::beam_rsrp_avx2(bores.data(), n, dir, hpbw, gain, f2b, base, floor,
                                out_v.data());
        for (std::size_t i = 0; i < n; ++i) REQUIRE(out_s[i] == out_v[i]);

        std::vector<double> f1(n), f2(n), smp(n);
        for (std::size_t i = 0; i < n; ++i) {
            f1[i] = f2[i] = db(gen);
            smp[i] = db(gen);
        }
        const double a = l3_coefficient(static_cast<int>(gen() % 12));
        kernels::ema_filter_scalar(f1.data(), smp.data(), n, a);
        kernels::ema_filter_avx2(f2.data(), smp.data(), n, a);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(f1[i] == f2[i]);
    }
}
#endif

TEST_CASE("kernel dispatch") {
    CHECK_NOTHROW(kernels::active());
    CHECK(kernels::by_name("scalar").beam_rsrp == kernels::beam_rsrp_scalar);
    CHECK_THROWS(kernels::by_name("nope"));
}
