#ifndef IDC_VERSION_HPP_
#define IDC_VERSION_HPP_

namespace idc {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kToolName = "idcsim";

} // namespace idc

#endif
