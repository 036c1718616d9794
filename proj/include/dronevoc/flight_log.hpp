#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace dronevoc {

// One control-rate sample of the vehicle telemetry stream.  Pose fields hold
// the smoothed estimate; raw_* hold the pre-smoothing observation when the
// log carries them.  control_method is 0 while holding position and 1 while
// tracking the gesture trajectory.
struct FlightLogRow {
    double t = 0.0;
    std::array<double, 4> cmd_w{};  // commanded rotor speeds, rad/s
    double x = 0.0, y = 0.0, z = 0.0;
    double roll = 0.0, pitch = 0.0, yaw = 0.0;
    double raw_x = 0.0, raw_y = 0.0, raw_z = 0.0;
    double raw_roll = 0.0, raw_pitch = 0.0, raw_yaw = 0.0;
    double battery_voltage = 3.7;
    int control_method = 0;
};

struct FlightLog {
    // '# key: value' lines, order preserved on round trip.
    std::vector<std::pair<std::string, std::string>> header;
    bool has_raw = true;
    std::vector<FlightLogRow> rows;

    // Value for a header key, or empty string when absent.
    std::string header_value(const std::string& key) const;
};

void write_flight_log(const std::string& path, const FlightLog& log);
FlightLog read_flight_log(const std::string& path);

// Companion artifact: realized (post motor lag) rotor speeds at the control
// rate, for acoustic reconstruction without rerunning physics.
void write_speed_log(const std::string& path,
                     const std::vector<std::pair<std::string, std::string>>& header,
                     double rate_hz, const std::vector<std::array<double, 4>>& speeds);

struct SpeedLog {
    std::vector<std::pair<std::string, std::string>> header;
    double rate_hz = 0.0;
    std::vector<std::array<double, 4>> speeds;
};

SpeedLog read_speed_log(const std::string& path);

}  // namespace dronevoc
