#include "sweep.hpp"

#include <cstdlib>
#include <string>

namespace psiforge::detail {

std::uint64_t sampling_seed() {
    const char* env = std::getenv("PSIFORGE_SEED");
    if (env == nullptr || *env == '\0')
        return kDefaultSeed;
    try {
        return std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
        return kDefaultSeed;
    }
}

} // namespace psiforge::detail
