#include "tng/wire/framing.hpp"

#include "tng/core/reasons.hpp"

namespace tng::wire {

Bytes write_frame(std::span<const std::uint8_t> body)
{
    if (body.size() > kMaxFrameBytes)
        throw_dev_failed(reason::FrameTooLarge, "frame body of " + std::to_string(body.size()) + " bytes exceeds cap",
                         "write_frame");
    Bytes out;
    out.reserve(4 + body.size());
    Writer w(out);
    w.u32(static_cast<std::uint32_t>(body.size()));
    w.raw(body);
    return out;
}

namespace {

// Fills buf completely; returns bytes read before end of stream.
std::size_t read_full(ByteStream& s, std::span<std::uint8_t> buf)
{
    std::size_t got = 0;
    while (got < buf.size()) {
        auto n = s.read_some(buf.subspan(got));
        if (n == 0)
            break;
        got += n;
    }
    return got;
}

} // namespace

std::optional<Bytes> read_frame(ByteStream& stream)
{
    std::uint8_t prefix[4];
    const auto got = read_full(stream, prefix);
    if (got == 0)
        return std::nullopt;
    if (got < 4)
        throw_dev_failed(reason::ConnectionClosed, "stream ended inside a frame prefix", "read_frame");
    const std::uint32_t len = static_cast<std::uint32_t>(prefix[0]) | (static_cast<std::uint32_t>(prefix[1]) << 8) |
                              (static_cast<std::uint32_t>(prefix[2]) << 16) |
                              (static_cast<std::uint32_t>(prefix[3]) << 24);
    if (len > kMaxFrameBytes)
        throw_dev_failed(reason::FrameTooLarge, "declared frame length " + std::to_string(len) + " exceeds cap",
                         "read_frame");
    Bytes body(len);
    if (read_full(stream, body) != len)
        throw_dev_failed(reason::ConnectionClosed, "stream ended inside a frame body", "read_frame");
    return body;
}

} // namespace tng::wire
