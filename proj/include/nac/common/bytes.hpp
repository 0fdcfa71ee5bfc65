#ifndef NAC_COMMON_BYTES_HPP
#define NAC_COMMON_BYTES_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nac {

using Bytes = std::vector<uint8_t>;
using ByteView = std::span<const uint8_t>;

inline Bytes
toBytes(std::string_view s)
{
  return Bytes(s.begin(), s.end());
}

inline std::string
toString(ByteView b)
{
  return std::string(b.begin(), b.end());
}

std::string
toHex(ByteView b, bool upperCase = false);

/// Throws std::invalid_argument on odd length or non-hex characters.
Bytes
fromHex(std::string_view hex);

/// True if `needle` occurs as a contiguous run inside `haystack`.
bool
containsSubsequence(ByteView haystack, ByteView needle);

inline void
append(Bytes& out, ByteView in)
{
  out.insert(out.end(), in.begin(), in.end());
}

} // namespace nac

#endif // NAC_COMMON_BYTES_HPP
