#include "corrdyn/numeric/parallel.hpp"

#include <cstdlib>
#include <string>

namespace corrdyn::numeric {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned default_threads() {
    unsigned n = g_threads.load();
    if (n) return n;
    if (const char* env = std::getenv("CORRDYN_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_default_threads(unsigned n) { g_threads = n; }

}  // namespace corrdyn::numeric
