#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vidpipe {

std::string base64_encode(std::span<const std::uint8_t> data);

/// Throws FormatError on anything that is not canonical padded base64.
std::vector<std::uint8_t> base64_decode(const std::string& text);

}  // namespace vidpipe
