#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace gapprob {

using u128 = unsigned __int128;

// Exact rational m = num/den > 1, kept in lowest terms. Every comparison of
// an integer against x/m or m*x is done by cross-multiplication in 128 bits.
class Multiplier {
public:
    Multiplier() = default;  // 2/1
    Multiplier(std::uint64_t num, std::uint64_t den);

    // Accepts "NUM/DEN" or a plain integer.
    static Multiplier parse(std::string_view text);

    std::uint64_t num() const noexcept { return num_; }
    std::uint64_t den() const noexcept { return den_; }
    double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
    bool is_two() const noexcept { return num_ == 2 && den_ == 1; }
    std::string str() const;

    // floor(x / m)
    u128 floor_div(std::uint64_t x) const noexcept { return u128(x) * den_ / num_; }
    // floor(m * x)
    u128 floor_mul(std::uint64_t x) const noexcept { return u128(x) * num_ / den_; }
    // ceil(m * x)
    u128 ceil_mul(std::uint64_t x) const noexcept { return (u128(x) * num_ + den_ - 1) / den_; }

    // Sign of q - m*p without rounding.
    std::strong_ordering compare_scaled(std::uint64_t q, std::uint64_t p) const noexcept {
        return u128(q) * den_ <=> u128(p) * num_;
    }
    bool below_scaled(std::uint64_t q, std::uint64_t p) const noexcept { return compare_scaled(q, p) < 0; }
    bool above_scaled(std::uint64_t q, std::uint64_t p) const noexcept { return compare_scaled(q, p) > 0; }

    friend bool operator==(const Multiplier&, const Multiplier&) = default;

private:
    std::uint64_t num_ = 2;
    std::uint64_t den_ = 1;
};

}  // namespace gapprob
