#ifndef MALLOWS_FORMAT_HPP
#define MALLOWS_FORMAT_HPP

#include <charconv>
#include <string>

namespace mallows {

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

} // namespace mallows

#endif
