#ifndef BSOPT_VERSION_HPP
#define BSOPT_VERSION_HPP

namespace bsopt {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "bsopt";

}  // namespace bsopt

#endif  // BSOPT_VERSION_HPP
