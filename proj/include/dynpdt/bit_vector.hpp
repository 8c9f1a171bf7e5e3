#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace dynpdt {

// Fixed-width unsigned integers packed into 64-bit words. Width 0 is allowed
// and stores nothing (every get returns 0).
class CompactVector {
  public:
    CompactVector() = default;
    CompactVector(std::uint64_t size, std::uint32_t width, std::uint64_t init = 0);

    std::uint64_t get(std::uint64_t i) const {
        assert(i < size_);
        if (width_ == 0) {
            return 0;
        }
        const std::uint64_t pos = i * width_;
        const std::uint64_t w = pos / 64;
        const std::uint32_t off = pos % 64;
        if (off + width_ <= 64) {
            return (words_[w] >> off) & mask_;
        }
        return ((words_[w] >> off) | (words_[w + 1] << (64 - off))) & mask_;
    }

    void set(std::uint64_t i, std::uint64_t v) {
        assert(i < size_);
        assert((v & ~mask_) == 0);
        if (width_ == 0) {
            return;
        }
        const std::uint64_t pos = i * width_;
        const std::uint64_t w = pos / 64;
        const std::uint32_t off = pos % 64;
        words_[w] = (words_[w] & ~(mask_ << off)) | (v << off);
        if (off + width_ > 64) {
            const std::uint32_t spill = off + width_ - 64;
            const std::uint64_t hi_mask = (std::uint64_t{1} << spill) - 1;
            words_[w + 1] = (words_[w + 1] & ~hi_mask) | (v >> (64 - off));
        }
    }

    std::uint64_t size() const { return size_; }
    std::uint32_t width() const { return width_; }
    std::uint64_t max_value() const { return mask_; }
    std::size_t memory_bytes() const { return words_.size() * sizeof(std::uint64_t); }

  private:
    std::vector<std::uint64_t> words_;
    std::uint64_t size_ = 0;
    std::uint32_t width_ = 0;
    std::uint64_t mask_ = 0;
};

class BitVector {
  public:
    BitVector() = default;
    explicit BitVector(std::uint64_t size) : words_((size + 63) / 64, 0), size_(size) {}

    bool get(std::uint64_t i) const {
        assert(i < size_);
        return (words_[i / 64] >> (i % 64)) & 1U;
    }
    void set(std::uint64_t i, bool bit = true) {
        assert(i < size_);
        const std::uint64_t m = std::uint64_t{1} << (i % 64);
        if (bit) {
            words_[i / 64] |= m;
        } else {
            words_[i / 64] &= ~m;
        }
    }

    // Number of set bits in [begin, end); the range must lie within one word.
    std::uint32_t popcount_in_word(std::uint64_t begin, std::uint64_t end) const {
        assert(begin <= end && end <= size_);
        if (begin == end) {
            return 0;
        }
        assert(begin / 64 == (end - 1) / 64);
        const std::uint32_t lo = begin % 64;
        const std::uint32_t len = static_cast<std::uint32_t>(end - begin);
        std::uint64_t w = words_[begin / 64] >> lo;
        if (len < 64) {
            w &= (std::uint64_t{1} << len) - 1;
        }
        return static_cast<std::uint32_t>(__builtin_popcountll(w));
    }

    std::uint64_t size() const { return size_; }
    std::size_t memory_bytes() const { return words_.size() * sizeof(std::uint64_t); }

  private:
    std::vector<std::uint64_t> words_;
    std::uint64_t size_ = 0;
};

}  // namespace dynpdt
