#include "dispersa/parallel.hpp"

#include <cstdlib>
#include <string>

namespace dispersa {

std::size_t default_thread_count() {
    const char* env = std::getenv("DISPERSA_THREADS");
    if (!env || !*env) return 1;
    try {
        const long n = std::stol(env);
        return n > 0 ? static_cast<std::size_t>(n) : 1;
    } catch (const std::exception&) {
        return 1;
    }
}

}  // namespace dispersa
