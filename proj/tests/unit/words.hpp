#pragma once

#include <cstdint>
#include <vector>

// All words of the given length over letters 0..3.
inline std::vector<std::vector<std::uint32_t>> all_words(int len)
{
    std::vector<std::vector<std::uint32_t>> out;
    std::size_t total = std::size_t(1) << (2 * len);
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> w;
        for (int i = 0; i < len; ++i) w.push_back((code >> (2 * i)) & 3);
        out.push_back(w);
    }
    return out;
}
