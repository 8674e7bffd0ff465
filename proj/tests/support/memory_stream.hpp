#pragma once

#include "tng/wire/framing.hpp"

#include <algorithm>
#include <cstring>
#include <random>

namespace tng::testing {

// In-memory stream that hands out its bytes in randomly sized chunks.
class ChunkedStream final : public wire::ByteStream {
public:
    ChunkedStream(std::vector<std::uint8_t> data, std::uint64_t seed, std::size_t max_chunk = 7)
        : data_(std::move(data)), rng_(seed), max_chunk_(max_chunk) {}

    std::size_t read_some(std::span<std::uint8_t> buf) override
    {
        if (pos_ >= data_.size() || buf.empty())
            return 0;
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_chunk_)(rng_);
        n = std::min({n, buf.size(), data_.size() - pos_});
        std::memcpy(buf.data(), data_.data() + pos_, n);
        pos_ += n;
        return n;
    }

    void write_all(std::span<const std::uint8_t> buf) override { written.insert(written.end(), buf.begin(), buf.end()); }

    std::vector<std::uint8_t> written;

private:
    std::vector<std::uint8_t> data_;
    std::size_t pos_ = 0;
    std::mt19937_64 rng_;
    std::size_t max_chunk_;
};

} // namespace tng::testing
