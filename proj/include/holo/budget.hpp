#pragma once

#include <cstdlib>

#include "holo/errors.hpp"

namespace holo {

// Cooperative step counter. Long-running computations call tick() and bail out
// with BudgetExceeded instead of running away.
class Budget {
  public:
    explicit Budget(long limit = default_limit()) : limit_(limit), used_(0) {}

    void tick(long n = 1) {
        used_ += n;
        if (limit_ > 0 && used_ > limit_)
            throw BudgetExceeded("step budget exceeded (" + std::to_string(limit_) + ")");
    }

    long used() const { return used_; }
    long limit() const { return limit_; }

    static long default_limit() {
        if (const char* env = std::getenv("HOLO_BUDGET")) {
            long v = std::atol(env);
            if (v > 0) return v;
        }
        return 100000;
    }

  private:
    long limit_;
    long used_;
};

}  // namespace holo
