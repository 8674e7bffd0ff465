#pragma once

#include "tng/core/types.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace tng {

struct AttributeConfig {
    std::string name;
    AttrWritable writable = AttrWritable::Read;
    AttrElementType element_type = AttrElementType::DevDouble;
    AttrFormat format = AttrFormat::Scalar;
    std::uint32_t max_dim_x = 1;
    std::uint32_t max_dim_y = 0;
    std::string description;
    std::string unit;

    /// Throws BAD_ATTRIBUTE_CONFIG when the shape invariants do not hold.
    void validate() const;

    bool operator==(const AttributeConfig&) const = default;
};

using AttrData = std::variant<std::vector<std::int16_t>,
                              std::vector<std::int32_t>,
                              std::vector<double>,
                              std::vector<std::string>>;

AttrElementType element_type_of(const AttrData& d) noexcept;
std::size_t element_count(const AttrData& d) noexcept;
AttrData empty_data(AttrElementType t);

// A typed 0/1/2-dimensional reading in row-major order.
// Invariant: element_count(data) == dim_x * max(dim_y, 1).
class AttributeValue {
public:
    AttributeValue() = default;

    /// Throws BAD_DIMENSIONS when the data length does not match the dims.
    AttributeValue(std::string name, AttrData data, std::uint32_t dim_x, std::uint32_t dim_y,
                   std::int64_t timestamp_ms = 0, DataSource source = DataSource::Hardware);

    template <class T>
    static AttributeValue scalar(std::string name, T v)
    {
        return AttributeValue(std::move(name), AttrData(std::vector<T>{std::move(v)}), 1, 0);
    }
    template <class T>
    static AttributeValue spectrum(std::string name, std::vector<T> v)
    {
        auto n = static_cast<std::uint32_t>(v.size());
        return AttributeValue(std::move(name), AttrData(std::move(v)), n, 0);
    }
    template <class T>
    static AttributeValue image(std::string name, std::vector<T> v, std::uint32_t dim_x, std::uint32_t dim_y)
    {
        return AttributeValue(std::move(name), AttrData(std::move(v)), dim_x, dim_y);
    }

    const std::string& name() const noexcept { return name_; }
    AttrElementType element_type() const noexcept { return element_type_of(data_); }
    std::uint32_t dim_x() const noexcept { return dim_x_; }
    std::uint32_t dim_y() const noexcept { return dim_y_; }
    const AttrData& data() const noexcept { return data_; }
    std::int64_t timestamp_ms() const noexcept { return timestamp_ms_; }
    DataSource source() const noexcept { return source_; }

    template <class T>
    const std::vector<T>& values() const { return std::get<std::vector<T>>(data_); }

    void set_name(std::string n) { name_ = std::move(n); }
    void set_timestamp_ms(std::int64_t t) noexcept { timestamp_ms_ = t; }
    void set_source(DataSource s) noexcept { source_ = s; }

    bool operator==(const AttributeValue&) const = default;

private:
    std::string name_;
    AttrData data_ = std::vector<double>{};
    std::uint32_t dim_x_ = 0;
    std::uint32_t dim_y_ = 0;
    std::int64_t timestamp_ms_ = 0;
    DataSource source_ = DataSource::Hardware;
};

/// True when the reading's shape fits the configured format and maxima.
bool fits_config(const AttributeValue& v, const AttributeConfig& cfg) noexcept;

} // namespace tng
