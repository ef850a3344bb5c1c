#include "gapprob/multiplier.hpp"

#include <charconv>
#include <numeric>

#include "gapprob/error.hpp"

namespace gapprob {

namespace {

std::uint64_t parse_u64(std::string_view digits, std::string_view whole) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw InvalidArgument("multiplier: cannot parse '" + std::string(whole) + "'");
    }
    return v;
}

}  // namespace

Multiplier::Multiplier(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw InvalidArgument("multiplier: zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (num_ <= den_) {
        throw InvalidArgument("multiplier: m = " + std::to_string(num) + "/" + std::to_string(den) +
                              " must be > 1");
    }
}

Multiplier Multiplier::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Multiplier(parse_u64(text, text), 1);
    return Multiplier(parse_u64(text.substr(0, slash), text), parse_u64(text.substr(slash + 1), text));
}

std::string Multiplier::str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace gapprob
