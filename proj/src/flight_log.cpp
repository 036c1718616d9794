#include "dronevoc/flight_log.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "dronevoc/errors.hpp"

namespace dronevoc {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void write_header(std::ostream& os,
                  const std::vector<std::pair<std::string, std::string>>& header) {
    for (const auto& [key, value] : header) os << "# " << key << ": " << value << "\n";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

double parse_num(const std::string& s, const char* where) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw ValidationError(std::string("bad number in ") + where + ": '" + s + "'");
    }
    return v;
}

// Shared '# key: value' header parser; returns the first non-header line.
std::string read_header_lines(std::istream& is,
                              std::vector<std::pair<std::string, std::string>>& header,
                              const std::string& path) {
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.rfind("# ", 0) == 0) {
            const std::size_t sep = line.find(": ", 2);
            if (sep == std::string::npos) {
                throw ValidationError("malformed header line in " + path + ": " + line);
            }
            header.emplace_back(line.substr(2, sep - 2), line.substr(sep + 2));
            continue;
        }
        return line;
    }
    throw ValidationError("missing column header in " + path);
}

}  // namespace

std::string FlightLog::header_value(const std::string& key) const {
    for (const auto& [k, v] : header) {
        if (k == key) return v;
    }
    return {};
}

void write_flight_log(const std::string& path, const FlightLog& log) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open for writing: " + path);
    write_header(f, log.header);
    f << "t,cmd_w0,cmd_w1,cmd_w2,cmd_w3,x,y,z,roll,pitch,yaw";
    if (log.has_raw) f << ",raw_x,raw_y,raw_z,raw_roll,raw_pitch,raw_yaw";
    f << ",battery_voltage,control_method\n";
    for (const FlightLogRow& r : log.rows) {
        f << fmt(r.t);
        for (double w : r.cmd_w) f << ',' << fmt(w);
        f << ',' << fmt(r.x) << ',' << fmt(r.y) << ',' << fmt(r.z) << ',' << fmt(r.roll)
          << ',' << fmt(r.pitch) << ',' << fmt(r.yaw);
        if (log.has_raw) {
            f << ',' << fmt(r.raw_x) << ',' << fmt(r.raw_y) << ',' << fmt(r.raw_z) << ','
              << fmt(r.raw_roll) << ',' << fmt(r.raw_pitch) << ',' << fmt(r.raw_yaw);
        }
        f << ',' << fmt(r.battery_voltage) << ',' << r.control_method << "\n";
    }
    if (!f) throw ValidationError("write failed: " + path);
}

FlightLog read_flight_log(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open: " + path);
    FlightLog log;
    const std::string columns = read_header_lines(f, log.header, path);

    const std::string with_raw =
        "t,cmd_w0,cmd_w1,cmd_w2,cmd_w3,x,y,z,roll,pitch,yaw,raw_x,raw_y,raw_z,raw_roll,"
        "raw_pitch,raw_yaw,battery_voltage,control_method";
    const std::string without_raw =
        "t,cmd_w0,cmd_w1,cmd_w2,cmd_w3,x,y,z,roll,pitch,yaw,battery_voltage,control_method";
    if (columns == with_raw) {
        log.has_raw = true;
    } else if (columns == without_raw) {
        log.has_raw = false;
    } else {
        throw ValidationError("unrecognized column header in " + path + ": " + columns);
    }
    const std::size_t expected = log.has_raw ? 19 : 13;

    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != expected) {
            throw ValidationError("row with wrong field count in " + path + ": " + line);
        }
        FlightLogRow r;
        std::size_t i = 0;
        r.t = parse_num(cells[i++], "t");
        for (double& w : r.cmd_w) w = parse_num(cells[i++], "cmd_w");
        r.x = parse_num(cells[i++], "x");
        r.y = parse_num(cells[i++], "y");
        r.z = parse_num(cells[i++], "z");
        r.roll = parse_num(cells[i++], "roll");
        r.pitch = parse_num(cells[i++], "pitch");
        r.yaw = parse_num(cells[i++], "yaw");
        if (log.has_raw) {
            r.raw_x = parse_num(cells[i++], "raw_x");
            r.raw_y = parse_num(cells[i++], "raw_y");
            r.raw_z = parse_num(cells[i++], "raw_z");
            r.raw_roll = parse_num(cells[i++], "raw_roll");
            r.raw_pitch = parse_num(cells[i++], "raw_pitch");
            r.raw_yaw = parse_num(cells[i++], "raw_yaw");
        }
        r.battery_voltage = parse_num(cells[i++], "battery_voltage");
        const double method = parse_num(cells[i++], "control_method");
        r.control_method = static_cast<int>(method);
        if (r.control_method != 0 && r.control_method != 1) {
            throw ValidationError("control_method must be 0 or 1 in " + path);
        }
        log.rows.push_back(r);
    }
    return log;
}

void write_speed_log(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& header,
                     double rate_hz, const std::vector<std::array<double, 4>>& speeds) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot open for writing: " + path);
    write_header(f, header);
    f << "# rate_hz: " << fmt(rate_hz) << "\n";
    f << "t,w0,w1,w2,w3\n";
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        f << fmt(static_cast<double>(i) / rate_hz);
        for (double w : speeds[i]) f << ',' << fmt(w);
        f << "\n";
    }
    if (!f) throw ValidationError("write failed: " + path);
}

SpeedLog read_speed_log(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open: " + path);
    SpeedLog log;
    const std::string columns = read_header_lines(f, log.header, path);
    if (columns != "t,w0,w1,w2,w3") {
        throw ValidationError("unrecognized column header in " + path + ": " + columns);
    }
    for (const auto& [k, v] : log.header) {
        if (k == "rate_hz") log.rate_hz = parse_num(v, "rate_hz");
    }
    if (!(log.rate_hz > 0.0)) throw ValidationError("missing rate_hz header in " + path);
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv(line);
        if (cells.size() != 5) {
            throw ValidationError("row with wrong field count in " + path + ": " + line);
        }
        std::array<double, 4> w{};
        for (int i = 0; i < 4; ++i) w[static_cast<std::size_t>(i)] = parse_num(cells[static_cast<std::size_t>(i) + 1], "w");
        log.speeds.push_back(w);
    }
    return log;
}

}  // namespace dronevoc
