#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace hsif {

/// A UTC calendar day. Stored as days since 1970-01-01.
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::chrono::sys_days d) : days_(d.time_since_epoch().count()) {}

    static constexpr Date from_days(std::int32_t days_since_epoch) {
        Date d;
        d.days_ = days_since_epoch;
        return d;
    }

    static Date from_ymd(int year, unsigned month, unsigned day);

    /// Strict `YYYY-MM-DD`; rejects impossible dates such as 2021-02-30.
    static std::optional<Date> parse(std::string_view text);

    std::string to_string() const;

    constexpr std::int32_t days_since_epoch() const { return days_; }
    constexpr std::chrono::sys_days sys_days() const {
        return std::chrono::sys_days{std::chrono::days{days_}};
    }

    constexpr Date next() const { return from_days(days_ + 1); }
    constexpr Date prev() const { return from_days(days_ - 1); }
    constexpr Date operator+(std::int32_t n) const { return from_days(days_ + n); }
    constexpr std::int32_t operator-(Date other) const { return days_ - other.days_; }

    constexpr auto operator<=>(const Date&) const = default;

private:
    std::int32_t days_ = 0;
};

}  // namespace hsif
