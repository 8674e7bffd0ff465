#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace tng::testing {

inline std::vector<std::uint8_t> from_hex(const std::string& text)
{
    std::vector<std::uint8_t> out;
    std::istringstream is(text);
    std::string byte;
    while (is >> byte)
        out.push_back(static_cast<std::uint8_t>(std::stoul(byte, nullptr, 16)));
    return out;
}

inline std::string to_hex(const std::vector<std::uint8_t>& b)
{
    std::string out;
    char buf[4];
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::snprintf(buf, sizeof(buf), i ? " %02X" : "%02X", b[i]);
        out += buf;
    }
    return out;
}

} // namespace tng::testing
