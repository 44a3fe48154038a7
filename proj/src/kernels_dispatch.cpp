#include "chosim/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace chosim::kernels {

namespace {

const KernelSet kScalar{beam_rsrp_scalar, ema_filter_scalar, "scalar"};

#if defined(__x86_64__) || defined(_M_X64)
const KernelSet kAvx2{beam_rsrp_avx2, ema_filter_avx2, "avx2"};
#endif

const KernelSet& select() {
    const char* forced = std::getenv("CHOSIM_KERNEL");
    if (forced != nullptr) return by_name(forced);
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return kAvx2;
#endif
    return kScalar;
}

}  // namespace

const KernelSet& active() {
    static const KernelSet& chosen = select();
    return chosen;
}

const KernelSet& by_name(const std::string& name) {
    if (name == "scalar") return kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (!avx2_available()) throw std::runtime_error("AVX2 not supported on this CPU");
        return kAvx2;
    }
#endif
    throw std::runtime_error("unknown kernel variant: " + name);
}

}  // namespace chosim::kernels
