#include "lindforest/weight.hpp"

#include <sstream>

namespace lindforest {

std::string int128_to_string(int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

static std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::string Weight::str() const {
    return is_exact ? int128_to_string(exact) : format_double(value);
}

std::string WeightSum::str() const {
    return is_exact ? int128_to_string(exact) : format_double(value);
}

}  // namespace lindforest
