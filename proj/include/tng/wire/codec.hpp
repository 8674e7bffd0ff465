#pragma once

#include "tng/core/value.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tng::wire {

using Bytes = std::vector<std::uint8_t>;

/// Hard cap on a frame body and therefore on any encoded value.
inline constexpr std::size_t kMaxFrameBytes = 16u * 1024u * 1024u;

// Little-endian primitive writer.
class Writer {
public:
    explicit Writer(Bytes& out) : out_(out) {}

    void u8(std::uint8_t v) { out_.push_back(v); }
    void u16(std::uint16_t v) { put_le(v); }
    void u32(std::uint32_t v) { put_le(v); }
    void u64(std::uint64_t v) { put_le(v); }
    void i16(std::int16_t v) { put_le(static_cast<std::uint16_t>(v)); }
    void i32(std::int32_t v) { put_le(static_cast<std::uint32_t>(v)); }
    void i64(std::int64_t v) { put_le(static_cast<std::uint64_t>(v)); }
    void f32(float v);
    void f64(double v);
    /// u32 length + UTF-8 bytes; throws BAD_UTF8.
    void str(std::string_view s);
    void raw(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
    void count(std::size_t n);

    std::size_t size() const noexcept { return out_.size(); }

private:
    template <class U>
    void put_le(U v)
    {
        for (std::size_t i = 0; i < sizeof(U); ++i)
            out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    Bytes& out_;
};

// Bounds-checked little-endian reader. Every read either succeeds or throws
// TRUNCATED / LENGTH_OVERFLOW / BAD_UTF8; it never reads past the span.
class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    std::uint8_t u8();
    std::uint16_t u16() { return get_le<std::uint16_t>(); }
    std::uint32_t u32() { return get_le<std::uint32_t>(); }
    std::uint64_t u64() { return get_le<std::uint64_t>(); }
    std::int16_t i16() { return static_cast<std::int16_t>(get_le<std::uint16_t>()); }
    std::int32_t i32() { return static_cast<std::int32_t>(get_le<std::uint32_t>()); }
    std::int64_t i64() { return static_cast<std::int64_t>(get_le<std::uint64_t>()); }
    float f32();
    double f64();
    std::string str();
    bool boolean();
    /// Element count of a sequence; LENGTH_OVERFLOW if count * min_element_bytes exceeds what remains.
    std::size_t count(std::size_t min_element_bytes);
    std::span<const std::uint8_t> rest();

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }
    bool at_end() const noexcept { return pos_ == in_.size(); }
    /// Throws TRAILING_BYTES unless every byte was consumed.
    void expect_end(std::string_view what) const;

private:
    void need(std::size_t n, std::string_view what);

    template <class U>
    U get_le()
    {
        need(sizeof(U), "integer");
        U v = 0;
        for (std::size_t i = 0; i < sizeof(U); ++i)
            v |= static_cast<U>(static_cast<U>(in_[pos_ + i]) << (8 * i));
        pos_ += sizeof(U);
        return v;
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

/// Exact number of bytes encode_value() will produce.
std::size_t encoded_size(const TangoValue& v);

/// Tag byte followed by the little-endian body. Throws VALUE_TOO_LARGE, BAD_UTF8.
Bytes encode_value(const TangoValue& v);
void encode_value(Writer& w, const TangoValue& v);

struct DecodedValue {
    TangoValue value;
    std::size_t consumed = 0;
};

/// Total over arbitrary input: returns or throws BAD_TAG, TRUNCATED, BAD_UTF8,
/// LENGTH_OVERFLOW, BAD_VALUE.
DecodedValue decode_value(std::span<const std::uint8_t> bytes);
TangoValue decode_value(Reader& r);

} // namespace tng::wire
