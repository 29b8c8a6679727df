#ifndef GRADWB_TEXT_HPP
#define GRADWB_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Small string helpers shared by the literal parsers.
namespace gw::text {

std::string strip(std::string_view s);
/// Split on `sep` at bracket depth zero; pieces are stripped.
std::vector<std::string> split_top(std::string_view s, char sep);
/// Split on runs of whitespace.
std::vector<std::string> words(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
/// Strict decimal integer; throws InputError naming `what`.
std::int64_t parse_int(std::string_view s, std::string_view what);
template <class Seq, class Fn>
std::string join(const Seq& items, std::string_view sep, Fn fmt) {
  std::string out;
  bool first = true;
  for (const auto& x : items) {
    if (!first) out += sep;
    first = false;
    out += fmt(x);
  }
  return out;
}

}  // namespace gw::text

#endif  // GRADWB_TEXT_HPP
