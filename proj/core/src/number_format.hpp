#ifndef MNKLAB_NUMBER_FORMAT_HPP
#define MNKLAB_NUMBER_FORMAT_HPP

#include <charconv>
#include <string>

namespace mnklab::detail {

// 17 significant digits: enough for any double to round-trip exactly.
inline std::string format_double(double value)
{
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, end);
}

} // namespace mnklab::detail

#endif
