#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rulefront {

// Calendar date. Ordering is lexicographic on (year, month, day), which
// matches chronological order for valid dates.
struct Date {
  int year = 0;
  int month = 0;
  int day = 0;

  auto operator<=>(const Date&) const = default;
};

// Days since 1970-01-01 (negative before). Proleptic Gregorian calendar.
constexpr std::int64_t to_serial(const Date& d) noexcept {
  // Howard Hinnant's days_from_civil.
  const int y = d.year - (d.month <= 2);
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy =
      (153u * static_cast<unsigned>(d.month + (d.month > 2 ? -3 : 9)) + 2u) / 5u +
      static_cast<unsigned>(d.day) - 1u;
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr Date from_serial(std::int64_t serial) noexcept {
  // Howard Hinnant's civil_from_days.
  serial += 719468;
  const std::int64_t era = (serial >= 0 ? serial : serial - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(serial - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned day = doy - (153 * mp + 2) / 5 + 1;
  const unsigned month = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (month <= 2)), static_cast<int>(month),
              static_cast<int>(day)};
}

// 0 = Sunday ... 6 = Saturday.
constexpr int weekday(const Date& d) noexcept {
  const std::int64_t s = to_serial(d);
  return static_cast<int>(s >= -4 ? (s + 4) % 7 : (s + 5) % 7 + 6);
}

constexpr bool is_weekend(const Date& d) noexcept {
  const int wd = weekday(d);
  return wd == 0 || wd == 6;
}

// Strict "YYYY-MM-DD". Returns nullopt on any malformation, including
// out-of-range month or day.
std::optional<Date> parse_date(std::string_view text);

std::string to_string(const Date& d);

}  // namespace rulefront
