#pragma once

#include "delaywave/energy.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace delaywave {

class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal that parses back to the same double (at most 17 digits).
std::string format_double(double x);
/// Strict parse of a whole field; throws CsvError.
double parse_double(std::string_view text);

inline constexpr std::string_view energy_csv_header = "step,t,e_kinetic,e_potential,e_total";
inline constexpr std::string_view profile_csv_header = "x,u";

void write_energy_csv(std::ostream& out, const EnergyTrace& trace);
EnergyTrace read_energy_csv(std::istream& in);

struct ProfileData {
    std::vector<double> x;
    std::vector<double> u;
};

void write_profile_csv(std::ostream& out, std::span<const double> x, std::span<const double> u);
ProfileData read_profile_csv(std::istream& in);

/// Writes `text` to `path`, creating parent directories. Throws std::runtime_error.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace delaywave
