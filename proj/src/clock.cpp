#include "tagcrawl/clock.hpp"

#include <thread>

namespace tagcrawl {

std::chrono::milliseconds SteadyClock::now() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now().time_since_epoch());
}

void SteadyClock::sleep_for(std::chrono::milliseconds d) {
    if (d.count() > 0) std::this_thread::sleep_for(d);
}

SteadyClock& SteadyClock::instance() {
    static SteadyClock clock;
    return clock;
}

}  // namespace tagcrawl
