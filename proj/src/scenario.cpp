#include "spinem/scenario.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "spinem/errors.hpp"

namespace spinem {

EvolutionParams Scenario::evolution() const {
    return {field, constants, mask, accel, t0, t1, dt, sample_every, r_min};
}

ParticleState Scenario::initial_state() const {
    return {position, momentum, t0, spinor_from_bloch(bloch)};
}

// ---------------------------------------------------------------------------
// Parsing.
//
// Line-oriented format: '#' starts a comment, '[name]' opens a section,
// 'key = value' assigns within the current section. Values are numbers,
// '(a, b, c)' vectors, true/false, or bare enum tokens. Keys are
// case-sensitive; unknown sections and keys are rejected. Every error
// carries the 1-based line it was found on; constraints discovered after
// the full pass point at the line of the offending key (or of the section
// header when a required key is missing, or line 1 when a required section
// is missing entirely).
// ---------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
}

double parse_number(std::string_view token, int line) {
    token = trim(token);
    if (token.size() > 1 && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError(ParseErrorKind::BadNumber, line,
                         "number out of range: '" + std::string(token) + "'");
    }
    if (ec != std::errc() || ptr != last) {
        throw ParseError(ParseErrorKind::Syntax, line,
                         "malformed number: '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(ParseErrorKind::BadNumber, line,
                         "number is not finite: '" + std::string(token) + "'");
    }
    return value;
}

long parse_integer(std::string_view token, int line) {
    token = trim(token);
    if (token.size() > 1 && token.front() == '+') token.remove_prefix(1);
    long value = 0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) {
        throw ParseError(ParseErrorKind::BadNumber, line,
                         "integer out of range: '" + std::string(token) + "'");
    }
    if (ec != std::errc() || ptr != last) {
        throw ParseError(ParseErrorKind::Syntax, line,
                         "expected an integer, got '" + std::string(token) + "'");
    }
    return value;
}

Vec3 parse_vector(std::string_view token, int line) {
    token = trim(token);
    if (token.size() < 2 || token.front() != '(' || token.back() != ')') {
        throw ParseError(ParseErrorKind::Syntax, line,
                         "expected a vector '(a, b, c)', got '" + std::string(token) + "'");
    }
    std::string_view body = token.substr(1, token.size() - 2);
    std::array<double, 3> comp{};
    for (int i = 0; i < 3; ++i) {
        std::string_view piece;
        if (i < 2) {
            const std::size_t comma = body.find(',');
            if (comma == std::string_view::npos) {
                throw ParseError(ParseErrorKind::Syntax, line,
                                 "vector needs three comma-separated components");
            }
            piece = body.substr(0, comma);
            body.remove_prefix(comma + 1);
        } else {
            if (body.find(',') != std::string_view::npos) {
                throw ParseError(ParseErrorKind::Syntax, line,
                                 "vector has more than three components");
            }
            piece = body;
        }
        comp[static_cast<std::size_t>(i)] = parse_number(piece, line);
    }
    return {comp[0], comp[1], comp[2]};
}

bool parse_bool(std::string_view token, int line) {
    token = trim(token);
    if (token == "true") return true;
    if (token == "false") return false;
    throw ParseError(ParseErrorKind::Constraint, line,
                     "expected true or false, got '" + std::string(token) + "'");
}

struct KeyRecord {
    int line = 0;
    bool seen = false;
};

class ScenarioBuilder {
public:
    Scenario scenario;
    std::map<std::string, KeyRecord> keys;        // "section.key" -> line
    std::map<std::string, int> section_lines;     // section -> header line

    int line_of(const std::string& dotted, int fallback) const {
        auto it = keys.find(dotted);
        return it != keys.end() ? it->second.line : fallback;
    }

    bool seen(const std::string& dotted) const { return keys.count(dotted) != 0; }

    void mark(const std::string& section, const std::string& key, int line) {
        const std::string dotted = section + "." + key;
        keys[dotted] = {line, true};
    }
};

const std::array<std::string_view, 6> kSections = {
    "constants", "field", "particle", "terms", "integration", "output"};

void assign(ScenarioBuilder& b, const std::string& section, const std::string& key,
            std::string_view value, int line) {
    Scenario& s = b.scenario;
    auto unknown = [&]() -> ParseError {
        return ParseError(ParseErrorKind::UnknownKey, line,
                          "unknown key '" + key + "' in section [" + section + "]");
    };

    if (section == "constants") {
        if (key == "hbar") s.constants.hbar = parse_number(value, line);
        else if (key == "m") s.constants.m = parse_number(value, line);
        else if (key == "c") s.constants.c = parse_number(value, line);
        else if (key == "e") s.constants.e = parse_number(value, line);
        else throw unknown();
    } else if (section == "field") {
        if (key == "family") {
            const std::string_view v = trim(value);
            if (v == "coulomb_potential") s.field.family = FieldFamily::CoulombPotential;
            else if (v == "uniform_static") s.field.family = FieldFamily::UniformStatic;
            else if (v == "plane_wave_circular") s.field.family = FieldFamily::PlaneWaveCircular;
            else if (v == "plane_wave_linear") s.field.family = FieldFamily::PlaneWaveLinear;
            else
                throw ParseError(ParseErrorKind::Constraint, line,
                                 "unknown field family '" + std::string(v) + "'");
        } else if (key == "Z") s.field.z_strength = parse_number(value, line);
        else if (key == "E") s.field.e_field = parse_vector(value, line);
        else if (key == "B") s.field.b_field = parse_vector(value, line);
        else if (key == "E0") s.field.amplitude = parse_number(value, line);
        else if (key == "omega") s.field.omega = parse_number(value, line);
        else if (key == "axis") s.field.axis = parse_vector(value, line);
        else if (key == "helicity") s.field.helicity = static_cast<int>(parse_integer(value, line));
        else throw unknown();
    } else if (section == "particle") {
        if (key == "position") s.position = parse_vector(value, line);
        else if (key == "momentum") s.momentum = parse_vector(value, line);
        else if (key == "spin") s.bloch = parse_vector(value, line);
        else throw unknown();
    } else if (section == "terms") {
        if (key == "so") s.mask.so = parse_bool(value, line);
        else if (key == "h1") s.mask.h1 = parse_bool(value, line);
        else if (key == "h2") s.mask.h2 = parse_bool(value, line);
        else if (key == "dv") s.mask.dv = parse_bool(value, line);
        else if (key == "zeeman") s.mask.zeeman = parse_bool(value, line);
        else if (key == "acceleration") {
            const std::string_view v = trim(value);
            if (v == "total_force") s.accel = AccelerationModel::TotalForce;
            else if (v == "electric_only") s.accel = AccelerationModel::ElectricOnly;
            else
                throw ParseError(ParseErrorKind::Constraint, line,
                                 "acceleration must be total_force or electric_only");
        } else throw unknown();
    } else if (section == "integration") {
        if (key == "t0") s.t0 = parse_number(value, line);
        else if (key == "t1") s.t1 = parse_number(value, line);
        else if (key == "dt") s.dt = parse_number(value, line);
        else if (key == "sample_every") s.sample_every = parse_integer(value, line);
        else if (key == "r_min") s.r_min = parse_number(value, line);
        else throw unknown();
    } else if (section == "output") {
        if (key == "trajectory") s.trajectory_path = std::string(trim(value));
        else if (key == "format") {
            const std::string_view v = trim(value);
            if (v == "csv") s.format = OutputFormat::Csv;
            else if (v == "jsonl") s.format = OutputFormat::Jsonl;
            else
                throw ParseError(ParseErrorKind::Constraint, line,
                                 "format must be csv or jsonl");
        } else throw unknown();
    }
    b.mark(section, key, line);
}

// Field keys that only make sense for particular families.
void check_field_key_applicability(const ScenarioBuilder& b) {
    const FieldFamily fam = b.scenario.field.family;
    auto forbid = [&](const char* key, bool allowed) {
        const std::string dotted = std::string("field.") + key;
        if (!allowed && b.seen(dotted)) {
            throw ParseError(ParseErrorKind::Constraint, b.line_of(dotted, 1),
                             std::string("key '") + key + "' does not apply to family '" +
                                 to_string(fam) + "'");
        }
    };
    const bool wave = fam == FieldFamily::PlaneWaveCircular ||
                      fam == FieldFamily::PlaneWaveLinear;
    forbid("Z", fam == FieldFamily::CoulombPotential);
    forbid("E", fam == FieldFamily::UniformStatic);
    forbid("B", fam == FieldFamily::UniformStatic);
    forbid("E0", wave);
    forbid("omega", wave);
    forbid("axis", wave);
    forbid("helicity", fam == FieldFamily::PlaneWaveCircular);
}

void validate_scenario(ScenarioBuilder& b) {
    Scenario& s = b.scenario;

    auto require_section = [&](const std::string& name) -> int {
        auto it = b.section_lines.find(name);
        if (it == b.section_lines.end()) {
            throw ParseError(ParseErrorKind::Constraint, 1,
                             "missing required section [" + name + "]");
        }
        return it->second;
    };
    auto require_key = [&](const std::string& section, const std::string& key) {
        const int header = require_section(section);
        if (!b.seen(section + "." + key)) {
            throw ParseError(ParseErrorKind::Constraint, header,
                             "missing required key '" + key + "' in [" + section + "]");
        }
    };

    require_key("field", "family");
    check_field_key_applicability(b);

    const bool wave = s.field.family == FieldFamily::PlaneWaveCircular ||
                      s.field.family == FieldFamily::PlaneWaveLinear;
    if (wave) {
        require_key("field", "E0");
        require_key("field", "omega");
        if (!(s.field.omega > 0.0)) {
            throw ParseError(ParseErrorKind::Constraint, b.line_of("field.omega", 1),
                             "omega must be positive");
        }
        if (!(s.field.amplitude >= 0.0)) {
            throw ParseError(ParseErrorKind::Constraint, b.line_of("field.E0", 1),
                             "E0 must be non-negative");
        }
        if (norm2(s.field.axis) == 0.0) {
            throw ParseError(ParseErrorKind::Constraint, b.line_of("field.axis", 1),
                             "axis must be a nonzero vector");
        }
        if (s.field.family == FieldFamily::PlaneWaveCircular &&
            s.field.helicity != 1 && s.field.helicity != -1) {
            throw ParseError(ParseErrorKind::Constraint, b.line_of("field.helicity", 1),
                             "helicity must be +1 or -1");
        }
    }
    try {
        validate(s.field);
    } catch (const ConfigError& e) {
        throw ParseError(ParseErrorKind::Constraint,
                         b.line_of("field.family", require_section("field")), e.what());
    }

    auto positive = [&](double v, const std::string& dotted, const char* what) {
        if (!(v > 0.0)) {
            throw ParseError(ParseErrorKind::Constraint, b.line_of(dotted, 1),
                             std::string(what) + " must be positive");
        }
    };
    positive(s.constants.hbar, "constants.hbar", "hbar");
    positive(s.constants.m, "constants.m", "m");
    positive(s.constants.c, "constants.c", "c");

    require_key("integration", "t1");
    require_key("integration", "dt");
    const int t1_line = b.line_of("integration.t1", 1);
    const int dt_line = b.line_of("integration.dt", 1);
    if (!(s.dt > 0.0)) {
        throw ParseError(ParseErrorKind::Constraint, dt_line, "dt must be positive");
    }
    if (!(s.t1 > s.t0)) {
        throw ParseError(ParseErrorKind::Constraint, t1_line, "t1 must exceed t0");
    }
    if (!(s.dt <= s.t1 - s.t0)) {
        throw ParseError(ParseErrorKind::Constraint, dt_line,
                         "dt must not exceed t1 - t0");
    }
    if (s.sample_every < 1) {
        throw ParseError(ParseErrorKind::Constraint,
                         b.line_of("integration.sample_every", 1),
                         "sample_every must be >= 1");
    }
    if (!(s.r_min >= 0.0)) {
        throw ParseError(ParseErrorKind::Constraint, b.line_of("integration.r_min", 1),
                         "r_min must be non-negative");
    }

    const double spin_norm = norm(s.bloch);
    if (std::abs(spin_norm - 1.0) > 1e-6) {
        throw ParseError(ParseErrorKind::Normalization, b.line_of("particle.spin", 1),
                         "spin norm " + format_double(spin_norm) +
                             " is outside the 1e-6 band around 1");
    }
    s.bloch /= spin_norm;

    if (norm(s.momentum) / s.constants.m >= s.constants.c) {
        throw ParseError(ParseErrorKind::Constraint, b.line_of("particle.momentum", 1),
                         "initial |p|/m must be below c");
    }
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    ScenarioBuilder b;
    std::string section;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(
            pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::size_t hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        const std::string_view content = trim(raw);
        if (content.empty()) continue;

        if (content.front() == '[') {
            if (content.back() != ']') {
                throw ParseError(ParseErrorKind::Syntax, line_no,
                                 "unterminated section header");
            }
            const std::string_view name = trim(content.substr(1, content.size() - 2));
            if (!valid_identifier(name)) {
                throw ParseError(ParseErrorKind::Syntax, line_no,
                                 "malformed section header");
            }
            bool known = false;
            for (std::string_view candidate : kSections) known |= candidate == name;
            if (!known) {
                throw ParseError(ParseErrorKind::UnknownSection, line_no,
                                 "unknown section [" + std::string(name) + "]");
            }
            section = std::string(name);
            b.section_lines.emplace(section, line_no);
            continue;
        }

        const std::size_t eq = content.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(ParseErrorKind::Syntax, line_no, "expected 'key = value'");
        }
        const std::string_view key = trim(content.substr(0, eq));
        const std::string_view value = trim(content.substr(eq + 1));
        if (!valid_identifier(key)) {
            throw ParseError(ParseErrorKind::Syntax, line_no, "malformed key");
        }
        if (value.empty()) {
            throw ParseError(ParseErrorKind::Syntax, line_no, "missing value");
        }
        if (section.empty()) {
            throw ParseError(ParseErrorKind::Syntax, line_no,
                             "key outside of any section");
        }
        assign(b, section, std::string(key), value, line_no);
    }

    validate_scenario(b);
    return b.scenario;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

// ---------------------------------------------------------------------------
// Serialization.
// ---------------------------------------------------------------------------

std::string format_double(double v) {
    std::array<char, 32> buf;
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), p);
}

namespace {

std::string format_vector(const Vec3& v) {
    return "(" + format_double(v.x) + ", " + format_double(v.y) + ", " +
           format_double(v.z) + ")";
}

const char* bool_token(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "[constants]\n"
        << "hbar = " << format_double(s.constants.hbar) << "\n"
        << "m = " << format_double(s.constants.m) << "\n"
        << "c = " << format_double(s.constants.c) << "\n"
        << "e = " << format_double(s.constants.e) << "\n\n";

    out << "[field]\n"
        << "family = " << to_string(s.field.family) << "\n";
    switch (s.field.family) {
    case FieldFamily::CoulombPotential:
        out << "Z = " << format_double(s.field.z_strength) << "\n";
        break;
    case FieldFamily::UniformStatic:
        out << "E = " << format_vector(s.field.e_field) << "\n"
            << "B = " << format_vector(s.field.b_field) << "\n";
        break;
    case FieldFamily::PlaneWaveCircular:
        out << "E0 = " << format_double(s.field.amplitude) << "\n"
            << "omega = " << format_double(s.field.omega) << "\n"
            << "axis = " << format_vector(s.field.axis) << "\n"
            << "helicity = " << s.field.helicity << "\n";
        break;
    case FieldFamily::PlaneWaveLinear:
        out << "E0 = " << format_double(s.field.amplitude) << "\n"
            << "omega = " << format_double(s.field.omega) << "\n"
            << "axis = " << format_vector(s.field.axis) << "\n";
        break;
    }
    out << "\n[particle]\n"
        << "position = " << format_vector(s.position) << "\n"
        << "momentum = " << format_vector(s.momentum) << "\n"
        << "spin = " << format_vector(s.bloch) << "\n";

    out << "\n[terms]\n"
        << "so = " << bool_token(s.mask.so) << "\n"
        << "h1 = " << bool_token(s.mask.h1) << "\n"
        << "h2 = " << bool_token(s.mask.h2) << "\n"
        << "dv = " << bool_token(s.mask.dv) << "\n"
        << "zeeman = " << bool_token(s.mask.zeeman) << "\n"
        << "acceleration = "
        << (s.accel == AccelerationModel::TotalForce ? "total_force" : "electric_only")
        << "\n";

    out << "\n[integration]\n"
        << "t0 = " << format_double(s.t0) << "\n"
        << "t1 = " << format_double(s.t1) << "\n"
        << "dt = " << format_double(s.dt) << "\n"
        << "sample_every = " << s.sample_every << "\n"
        << "r_min = " << format_double(s.r_min) << "\n";

    if (!s.trajectory_path.empty() || s.format != OutputFormat::Csv) {
        out << "\n[output]\n";
        if (!s.trajectory_path.empty()) out << "trajectory = " << s.trajectory_path << "\n";
        out << "format = " << (s.format == OutputFormat::Csv ? "csv" : "jsonl") << "\n";
    }
    return out.str();
}

namespace {

constexpr const char* kColumns[] = {"t",  "rx", "ry", "rz", "px",     "py",
                                    "pz", "sx", "sy", "sz", "h0",     "so",
                                    "h1", "h2", "dv", "zeeman", "total"};

std::array<double, 17> sample_row(const TrajectorySample& s) {
    return {s.t,          s.r.x,        s.r.y,      s.r.z,      s.p.x,
            s.p.y,        s.p.z,        s.sigma.x,  s.sigma.y,  s.sigma.z,
            s.terms.h0,   s.terms.so,   s.terms.h1, s.terms.h2, s.terms.dv,
            s.terms.zeeman, s.terms.total};
}

}  // namespace

void write_trajectory(const TrajectoryRecord& rec, OutputFormat fmt,
                      std::ostream& out) {
    if (rec.samples.empty()) {
        throw InvalidStateError("cannot write an empty trajectory record");
    }
    if (fmt == OutputFormat::Csv) {
        for (std::size_t i = 0; i < std::size(kColumns); ++i) {
            out << (i == 0 ? "" : ",") << kColumns[i];
        }
        out << "\n";
        for (const TrajectorySample& s : rec.samples) {
            const auto row = sample_row(s);
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i == 0 ? "" : ",") << format_double(row[i]);
            }
            out << "\n";
        }
    } else {
        for (const TrajectorySample& s : rec.samples) {
            const auto row = sample_row(s);
            out << "{";
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i == 0 ? "" : ",") << "\"" << kColumns[i]
                    << "\":" << format_double(row[i]);
            }
            out << "}\n";
        }
    }
    if (!out) throw IoError("trajectory write failed");
}

}  // namespace spinem
