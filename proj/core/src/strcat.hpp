#pragma once

#include <string>
#include <string_view>
#include <type_traits>

namespace itlab::detail {

inline void append(std::string& out, std::string_view s) { out += s; }
inline void append(std::string& out, char c) { out += c; }
template <class N>
  requires std::is_integral_v<N>
void append(std::string& out, N n) {
  out += std::to_string(n);
}

template <class... Parts>
std::string cat(const Parts&... parts) {
  std::string out;
  (append(out, parts), ...);
  return out;
}

}  // namespace itlab::detail
