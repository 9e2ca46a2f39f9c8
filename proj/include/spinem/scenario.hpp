#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "spinem/dynamics.hpp"

namespace spinem {

enum class OutputFormat { Csv, Jsonl };

/// A parsed, validated run description. See README for the file format.
struct Scenario {
    Constants constants;
    FieldConfiguration field;

    Vec3 position{};
    Vec3 momentum{};
    Vec3 bloch{0.0, 0.0, 1.0};

    TermMask mask;
    AccelerationModel accel = AccelerationModel::TotalForce;

    double t0 = 0.0;
    double t1 = 0.0;
    double dt = 0.0;
    long sample_every = 1;
    double r_min = 1e-6;

    std::string trajectory_path;  // empty: no trajectory file
    OutputFormat format = OutputFormat::Csv;

    EvolutionParams evolution() const;
    ParticleState initial_state() const;

    bool operator==(const Scenario&) const = default;
};

/// Parse the line-oriented scenario format. All failures are ParseError
/// with a kind and a 1-based line number.
Scenario parse_scenario(std::string_view text);

/// Read and parse a scenario file. Unreadable file -> IoError naming the path.
Scenario load_scenario(const std::string& path);

/// Canonical text form; parse_scenario(format_scenario(s)) == s.
std::string format_scenario(const Scenario& s);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

/// Write a trajectory as CSV (header t,rx,ry,rz,px,py,pz,sx,sy,sz,
/// h0,so,h1,h2,dv,zeeman,total) or as JSONL with one object per sample using
/// the same field names. Numbers use format_double, so a parse-back
/// reproduces every value bit-exactly. Empty record -> InvalidStateError.
void write_trajectory(const TrajectoryRecord& rec, OutputFormat fmt,
                      std::ostream& out);

}  // namespace spinem
