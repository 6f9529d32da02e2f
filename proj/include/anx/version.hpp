#ifndef ANX_VERSION_HPP
#define ANX_VERSION_HPP

#include <string_view>

namespace anx {

inline constexpr std::string_view kToolName = "anxscope";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace anx

#endif  // ANX_VERSION_HPP
