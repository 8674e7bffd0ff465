#pragma once

#include "tng/wire/codec.hpp"

#include <optional>

namespace tng::wire {

// Minimal blocking byte stream. read_some returns 0 at end of stream.
class ByteStream {
public:
    virtual ~ByteStream() = default;
    virtual std::size_t read_some(std::span<std::uint8_t> buf) = 0;
    virtual void write_all(std::span<const std::uint8_t> buf) = 0;
};

/// 4-byte little-endian length prefix + body. Throws FRAME_TOO_LARGE.
Bytes write_frame(std::span<const std::uint8_t> body);

/// Next frame body, or nullopt when the stream ends cleanly between frames.
/// Throws CONNECTION_CLOSED on a mid-frame end and FRAME_TOO_LARGE on an oversized prefix.
std::optional<Bytes> read_frame(ByteStream& stream);

} // namespace tng::wire
