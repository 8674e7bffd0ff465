#pragma once

#include "tng/core/types.hpp"

#include <string>
#include <vector>

namespace tng {

struct CommandInfo {
    std::string name;
    TypeTag in_type = TypeTag::DevVoid;
    TypeTag out_type = TypeTag::DevVoid;
    std::string description;
    std::vector<DeviceState> allowed_states; // empty: allowed in every state

    bool allowed_in(DeviceState s) const noexcept;

    bool operator==(const CommandInfo&) const = default;
};

} // namespace tng
