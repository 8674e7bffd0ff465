#include "tng/core/attribute.hpp"

#include "tng/core/command_info.hpp"
#include "tng/core/errors.hpp"
#include "tng/core/reasons.hpp"

#include <algorithm>

namespace tng {

void AttributeConfig::validate() const
{
    auto fail = [&](const std::string& why) {
        throw_dev_failed(reason::BadAttributeConfig, "attribute '" + name + "': " + why, "AttributeConfig::validate");
    };
    if (name.empty())
        fail("empty name");
    if (max_dim_x == 0)
        fail("max_dim_x must be positive");
    if (format == AttrFormat::Scalar && (max_dim_x != 1 || max_dim_y != 0))
        fail("scalar requires max_dim_x=1 and max_dim_y=0");
    if (format == AttrFormat::Spectrum && max_dim_y != 0)
        fail("spectrum requires max_dim_y=0");
    if (format == AttrFormat::Image && max_dim_y == 0)
        fail("image requires max_dim_y>0");
}

AttrElementType element_type_of(const AttrData& d) noexcept
{
    switch (d.index()) {
    case 0: return AttrElementType::DevShort;
    case 1: return AttrElementType::DevLong;
    case 2: return AttrElementType::DevDouble;
    default: return AttrElementType::DevString;
    }
}

std::size_t element_count(const AttrData& d) noexcept
{
    return std::visit([](const auto& v) { return v.size(); }, d);
}

AttrData empty_data(AttrElementType t)
{
    switch (t) {
    case AttrElementType::DevShort: return std::vector<std::int16_t>{};
    case AttrElementType::DevLong: return std::vector<std::int32_t>{};
    case AttrElementType::DevDouble: return std::vector<double>{};
    case AttrElementType::DevString: return std::vector<std::string>{};
    }
    return std::vector<double>{};
}

AttributeValue::AttributeValue(std::string name, AttrData data, std::uint32_t dim_x, std::uint32_t dim_y,
                               std::int64_t timestamp_ms, DataSource source)
    : name_(std::move(name)), data_(std::move(data)), dim_x_(dim_x), dim_y_(dim_y), timestamp_ms_(timestamp_ms),
      source_(source)
{
    const std::uint64_t expected = static_cast<std::uint64_t>(dim_x) * std::max<std::uint64_t>(dim_y, 1);
    if (element_count(data_) != expected)
        throw_dev_failed(reason::BadDimensions,
                         "attribute '" + name_ + "' has " + std::to_string(element_count(data_)) +
                             " elements for dims " + std::to_string(dim_x) + "x" + std::to_string(dim_y),
                         "AttributeValue");
}

bool fits_config(const AttributeValue& v, const AttributeConfig& cfg) noexcept
{
    if (v.element_type() != cfg.element_type)
        return false;
    switch (cfg.format) {
    case AttrFormat::Scalar: return v.dim_x() == 1 && v.dim_y() == 0;
    case AttrFormat::Spectrum: return v.dim_y() == 0 && v.dim_x() <= cfg.max_dim_x;
    case AttrFormat::Image: return v.dim_x() <= cfg.max_dim_x && v.dim_y() <= cfg.max_dim_y;
    }
    return false;
}

bool CommandInfo::allowed_in(DeviceState s) const noexcept
{
    return allowed_states.empty() || std::find(allowed_states.begin(), allowed_states.end(), s) != allowed_states.end();
}

} // namespace tng
