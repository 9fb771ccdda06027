#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace imsim {

// Fixed-width histogram over SINR in dB. Out-of-range mass (including
// gamma = 0 and gamma = +inf) accumulates in the edge bins.
class Histogram {
  public:
    Histogram(double lo_db = -40.0, double hi_db = 60.0, int bins = 400)
        : lo_(lo_db), hi_(hi_db), counts_(bins, 0) {}

    void add_db(double value_db) {
        int bin;
        if (value_db <= lo_) {
            bin = 0;
        } else if (value_db >= hi_) {
            bin = static_cast<int>(counts_.size()) - 1;
        } else {
            bin = static_cast<int>((value_db - lo_) / (hi_ - lo_) * counts_.size());
            if (bin >= static_cast<int>(counts_.size())) bin = static_cast<int>(counts_.size()) - 1;
        }
        ++counts_[bin];
    }

    void add_linear(double gamma) {
        if (gamma <= 0.0) {
            ++counts_.front();
        } else if (std::isinf(gamma)) {
            ++counts_.back();
        } else {
            add_db(10.0 * std::log10(gamma));
        }
    }

    void merge(const Histogram& other) {
        for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    }

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (std::uint64_t c : counts_) t += c;
        return t;
    }

    std::vector<double> normalized() const {
        std::vector<double> f(counts_.size(), 0.0);
        std::uint64_t t = total();
        if (t == 0) return f;
        for (size_t i = 0; i < counts_.size(); ++i) f[i] = static_cast<double>(counts_[i]) / t;
        return f;
    }

    double lo_db() const { return lo_; }
    double hi_db() const { return hi_; }
    int bins() const { return static_cast<int>(counts_.size()); }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

  private:
    double lo_, hi_;
    std::vector<std::uint64_t> counts_;
};

} // namespace imsim
