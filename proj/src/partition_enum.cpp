#include "partmech/partition_enum.hpp"

#include "partmech/errors.hpp"

namespace partmech {

namespace {

constexpr int kMaxEnumItems = 25;  // Bell(25) < 2^63, Bell(26) overflows

// completions[i][j] = number of ways to extend an RGS prefix of length i with
// running maximum j to a full string of length n.
std::vector<std::vector<std::uint64_t>> completion_table(int n) {
    std::vector<std::vector<std::uint64_t>> d(static_cast<std::size_t>(n) + 1,
                                              std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
    for (int j = 0; j <= n; ++j) d[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)] = 1;
    for (int i = n - 1; i >= 1; --i) {
        for (int j = 0; j < n; ++j) {
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                static_cast<std::uint64_t>(j + 1) * d[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j)] +
                d[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(j) + 1];
        }
    }
    return d;
}

}  // namespace

std::uint64_t PartitionEnumerator::count(int n) {
    if (n < 1 || n > kMaxEnumItems) {
        throw Error(ErrorKind::InvalidArgument,
                    "partition enumeration supports 1..25 items, got " + std::to_string(n));
    }
    return completion_table(n)[1][0];
}

PartitionEnumerator::PartitionEnumerator(int n, std::uint64_t start_rank)
    : n_(n), rank_(start_rank), rgs_(static_cast<std::size_t>(n), 0),
      prefix_max_(static_cast<std::size_t>(n), 0) {
    if (n < 1 || n > kMaxEnumItems) {
        throw Error(ErrorKind::InvalidArgument,
                    "partition enumeration supports 1..25 items, got " + std::to_string(n));
    }
    auto d = completion_table(n);
    if (start_rank >= d[1][0]) {
        throw Error(ErrorKind::InvalidArgument, "partition rank out of range");
    }
    // Unrank: at each position spend the completion counts of smaller digits.
    std::uint64_t r = start_rank;
    int max_so_far = 0;
    for (int i = 1; i < n; ++i) {
        std::uint64_t per_digit = d[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(max_so_far)];
        int digit = 0;
        while (digit <= max_so_far && r >= per_digit) {
            r -= per_digit;
            ++digit;
        }
        rgs_[static_cast<std::size_t>(i)] = digit;
        if (digit > max_so_far) max_so_far = digit;
        prefix_max_[static_cast<std::size_t>(i)] = max_so_far;
    }
}

bool PartitionEnumerator::next() {
    // Lexicographic successor: find the rightmost position that can still be
    // incremented (digit <= running max of its prefix), zero everything after.
    for (int i = n_ - 1; i >= 1; --i) {
        if (rgs_[static_cast<std::size_t>(i)] <= prefix_max_[static_cast<std::size_t>(i) - 1]) {
            rgs_[static_cast<std::size_t>(i)] += 1;
            prefix_max_[static_cast<std::size_t>(i)] =
                std::max(prefix_max_[static_cast<std::size_t>(i) - 1], rgs_[static_cast<std::size_t>(i)]);
            for (int j = i + 1; j < n_; ++j) {
                rgs_[static_cast<std::size_t>(j)] = 0;
                prefix_max_[static_cast<std::size_t>(j)] = prefix_max_[static_cast<std::size_t>(i)];
            }
            ++rank_;
            return true;
        }
    }
    return false;
}

std::vector<std::vector<int>> PartitionEnumerator::blocks() const {
    return blocks_from_rgs(rgs_);
}

std::vector<std::vector<int>> PartitionEnumerator::blocks_from_rgs(const std::vector<int>& rgs) {
    int nblocks = 0;
    for (int digit : rgs) nblocks = std::max(nblocks, digit + 1);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(nblocks));
    for (std::size_t i = 0; i < rgs.size(); ++i) {
        out[static_cast<std::size_t>(rgs[i])].push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace partmech
