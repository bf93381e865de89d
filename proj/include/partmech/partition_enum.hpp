#pragma once

#include <cstdint>
#include <vector>

namespace partmech {

// Enumerates the set partitions of {0..n-1} exactly once, in restricted
// growth string (RGS) order. The first partition is the grand bundle (all
// zeros), the last is all singletons. Supports O(n^2) unranking so the range
// can be split into independent chunks for parallel search.
class PartitionEnumerator {
  public:
    explicit PartitionEnumerator(int n, std::uint64_t start_rank = 0);

    // Bell(n); guards n against uint64 overflow (n <= 25).
    static std::uint64_t count(int n);

    const std::vector<int>& rgs() const { return rgs_; }
    std::uint64_t rank() const { return rank_; }

    // Advances to the next partition; returns false once exhausted.
    bool next();

    // Materializes the current RGS as blocks of item indices.
    std::vector<std::vector<int>> blocks() const;

    static std::vector<std::vector<int>> blocks_from_rgs(const std::vector<int>& rgs);

  private:
    int n_;
    std::uint64_t rank_;
    std::vector<int> rgs_;
    std::vector<int> prefix_max_;  // prefix_max_[i] = max(rgs_[0..i])
};

}  // namespace partmech
