#pragma once

#include <chrono>

namespace tagcrawl {

// Injectable time source so politeness timing is testable without real
// sleeps. now() is monotonic.
class Clock {
public:
    virtual ~Clock() = default;
    virtual std::chrono::milliseconds now() = 0;
    virtual void sleep_for(std::chrono::milliseconds d) = 0;
};

class SteadyClock final : public Clock {
public:
    std::chrono::milliseconds now() override;
    void sleep_for(std::chrono::milliseconds d) override;

    static SteadyClock& instance();
};

}  // namespace tagcrawl
