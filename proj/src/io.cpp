#include "delaywave/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace delaywave {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    if (res.ec != std::errc()) throw CsvError("cannot format number");
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text)
{
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) throw CsvError("not a number: '" + std::string(text) + "'");
    return value;
}

namespace {

std::vector<std::string_view> split(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

void expect_header(std::istream& in, std::string_view header)
{
    std::string line;
    if (!std::getline(in, line)) throw CsvError("empty CSV");
    if (line != header) throw CsvError("unexpected CSV header '" + line + "', expected '" + std::string(header) + "'");
}

}  // namespace

void write_energy_csv(std::ostream& out, const EnergyTrace& trace)
{
    out << energy_csv_header << '\n';
    for (const auto& r : trace.records())
        out << r.step << ',' << format_double(r.t) << ',' << format_double(r.kinetic) << ','
            << format_double(r.potential) << ',' << format_double(r.total) << '\n';
}

EnergyTrace read_energy_csv(std::istream& in)
{
    expect_header(in, energy_csv_header);
    EnergyTrace trace;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 5) throw CsvError("line " + std::to_string(lineno) + ": expected 5 fields");
        std::size_t step = 0;
        const auto res = std::from_chars(f[0].data(), f[0].data() + f[0].size(), step);
        if (res.ec != std::errc() || res.ptr != f[0].data() + f[0].size())
            throw CsvError("line " + std::to_string(lineno) + ": bad step");
        trace.append(EnergyRecord{step, parse_double(f[1]), parse_double(f[2]), parse_double(f[3]), parse_double(f[4])});
    }
    return trace;
}

void write_profile_csv(std::ostream& out, std::span<const double> x, std::span<const double> u)
{
    if (x.size() != u.size()) throw CsvError("profile x and u lengths differ");
    out << profile_csv_header << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) out << format_double(x[i]) << ',' << format_double(u[i]) << '\n';
}

ProfileData read_profile_csv(std::istream& in)
{
    expect_header(in, profile_csv_header);
    ProfileData p;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 2) throw CsvError("profile line must have 2 fields");
        p.x.push_back(parse_double(f[0]));
        p.u.push_back(parse_double(f[1]));
    }
    return p;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace delaywave
