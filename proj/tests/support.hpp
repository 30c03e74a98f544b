#pragma once

#include <memory>
#include <string_view>

#include "cliffext/group_spec.hpp"
#include "cliffext/symplectic_group.hpp"

namespace test_support {

inline std::shared_ptr<const cliffext::DoubleSpace> space_of(std::string_view spec) {
  return std::make_shared<const cliffext::DoubleSpace>(cliffext::parse_group_spec(spec));
}

inline std::shared_ptr<const cliffext::SymplecticGroup> sp_of(std::string_view spec) {
  return std::make_shared<const cliffext::SymplecticGroup>(cliffext::enumerate_sp(space_of(spec)));
}

}  // namespace test_support
