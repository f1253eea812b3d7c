#include "slantpath/scenario.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <utility>

#include "slantpath/numformat.hpp"

namespace slantpath {

namespace {

constexpr std::array<std::string_view, 5> kBuiltinNames{
    "Rainy weather", "Foggy weather", "Clear weather", "Extreme air pollution",
    "Snowy weather",
};

// Stratospheric sulfate scatters nearly wavelength-neutrally across the
// operating band; a sub-0.5 km visibility parameter pins its scaling exponent
// to zero.
constexpr double kVolcanicVisibilityKm = 0.4;

constexpr std::string_view kVolcanicNote =
    "volcanic aerosol states carry a sub-0.5 km visibility parameter, "
    "keeping their extinction wavelength-flat";

LayerState state(std::string label, double att_db_per_km, double probability,
                 std::optional<double> visibility_km) {
    return {std::move(label), ExtinctionCoefficient::db_per_km(att_db_per_km),
            probability, visibility_km};
}

Slab volcanic_slab() {
    return {15.0, 30.0,
            {state("high volcanic", 0.0104, 0.5, kVolcanicVisibilityKm),
             state("background volcanic", 2.036e-4, 0.5, kVolcanicVisibilityKm)}};
}

}  // namespace

std::string_view builtin_scenario_name(int id) {
    if (id < 1 || id > kBuiltinScenarioCount) {
        throw DomainError("unknown scenario id");
    }
    return kBuiltinNames[static_cast<std::size_t>(id - 1)];
}

ScenarioSpec builtin_scenario(int id) {
    ScenarioSpec spec;
    spec.id = id;
    spec.name = std::string(builtin_scenario_name(id));
    spec.notes = std::string(kVolcanicNote);
    spec.profile.name = spec.name;
    spec.profile.mode = EvalMode::Physical;

    std::vector<Slab>& slabs = spec.profile.slabs;
    switch (id) {
        case 1:
            slabs.push_back({0.0, 0.8,
                             {state("nimbostratus", 8.2425, 0.9, 0.0429),
                              state("normal", 0.034, 0.1, 10.0)}});
            slabs.push_back({0.8, 15.0, {state("clear", 0.0025, 1.0, 145.0)}});
            slabs.push_back(volcanic_slab());
            break;
        case 2:
            slabs.push_back({0.0, 1.0, {state("thick fog", 1.768, 1.0, 0.20)}});
            slabs.push_back({1.0, 2.0, {state("light fog", 0.4592, 1.0, 0.77)}});
            slabs.push_back({2.0, 15.0, {state("clear", 0.0025, 1.0, 145.0)}});
            slabs.push_back(volcanic_slab());
            break;
        case 3:
            slabs.push_back({0.0, 3.0, {state("normal", 0.034, 1.0, 10.0)}});
            slabs.push_back({3.0, 15.0, {state("clear", 0.0025, 1.0, 145.0)}});
            slabs.push_back(volcanic_slab());
            break;
        case 4:
            slabs.push_back({0.0, 3.0,
                             {state("extremely polluted", 0.3536, 0.7, 1.0),
                              state("normal", 0.034, 0.3, 10.0)}});
            slabs.push_back({3.0, 15.0, {state("clear", 0.0025, 1.0, 145.0)}});
            slabs.push_back(volcanic_slab());
            break;
        case 5:
            slabs.push_back({0.0, 2.0, {state("heavy snow", 0.20, 1.0, 0.1)}});
            slabs.push_back({2.0, 15.0, {state("clear", 0.0025, 1.0, 145.0)}});
            slabs.push_back(volcanic_slab());
            break;
    }
    return spec;
}

// --------------------------------------------------------------------------
// Scenario file grammar
// --------------------------------------------------------------------------

namespace {

struct Line {
    int number;
    std::string text;
};

// Drops comments ('#' outside quotes) and blank lines.
std::vector<Line> significant_lines(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view raw = text.substr(
            pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++number;

        std::string stripped;
        bool in_quotes = false;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            const char c = raw[i];
            if (c == '#' && !in_quotes) break;
            if (c == '"' && (i == 0 || raw[i - 1] != '\\')) in_quotes = !in_quotes;
            if (c != '\r') stripped.push_back(c);
        }
        const std::size_t begin = stripped.find_first_not_of(" \t");
        if (begin != std::string::npos) {
            const std::size_t end = stripped.find_last_not_of(" \t");
            lines.push_back({number, stripped.substr(begin, end - begin + 1)});
        }

        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return lines;
}

struct Cursor {
    const Line& line;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < line.text.size() &&
               (line.text[pos] == ' ' || line.text[pos] == '\t')) {
            ++pos;
        }
    }

    bool at_end() {
        skip_ws();
        return pos >= line.text.size();
    }

    std::string take_word(const char* what) {
        skip_ws();
        const std::size_t start = pos;
        while (pos < line.text.size() && line.text[pos] != ' ' &&
               line.text[pos] != '\t') {
            ++pos;
        }
        if (pos == start) {
            throw ParseError(line.number, std::string("expected ") + what);
        }
        return line.text.substr(start, pos - start);
    }

    std::string take_quoted(const char* what) {
        skip_ws();
        if (pos >= line.text.size() || line.text[pos] != '"') {
            throw ParseError(line.number,
                             std::string("expected quoted ") + what);
        }
        ++pos;
        std::string out;
        while (pos < line.text.size()) {
            const char c = line.text[pos++];
            if (c == '\\' && pos < line.text.size() &&
                (line.text[pos] == '"' || line.text[pos] == '\\')) {
                out.push_back(line.text[pos++]);
            } else if (c == '"') {
                return out;
            } else {
                out.push_back(c);
            }
        }
        throw ParseError(line.number,
                         std::string("unterminated quoted ") + what);
    }

    double take_number(const char* what) {
        return to_number(take_word(what), what);
    }

    double to_number(const std::string& token, const char* what) {
        const char* begin = token.c_str();
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end != begin + token.size() || token.empty()) {
            throw ParseError(line.number, std::string("malformed number for ") +
                                              what + ": \"" + token + "\"");
        }
        return value;
    }

    void expect_end() {
        if (!at_end()) {
            throw ParseError(line.number, "unexpected trailing content: \"" +
                                              line.text.substr(pos) + "\"");
        }
    }
};

LayerState parse_state_line(Cursor& cur) {
    LayerState state;
    state.label = cur.take_quoted("state label");

    bool have_att = false;
    bool have_eta = false;
    while (!cur.at_end()) {
        const std::string word = cur.take_word("state attribute");
        const std::size_t eq = word.find('=');
        if (eq == std::string::npos) {
            throw ParseError(cur.line.number,
                             "expected key=value attribute, got \"" + word + "\"");
        }
        const std::string key = word.substr(0, eq);
        const std::string value = word.substr(eq + 1);
        if (key == "att_db_per_km") {
            if (have_att) {
                throw ParseError(cur.line.number, "duplicate att_db_per_km");
            }
            state.attenuation =
                ExtinctionCoefficient::db_per_km(cur.to_number(value, "att_db_per_km"));
            have_att = true;
        } else if (key == "eta") {
            if (have_eta) throw ParseError(cur.line.number, "duplicate eta");
            state.probability = cur.to_number(value, "eta");
            have_eta = true;
        } else if (key == "visibility_km") {
            if (state.visibility_km) {
                throw ParseError(cur.line.number, "duplicate visibility_km");
            }
            state.visibility_km = cur.to_number(value, "visibility_km");
        } else {
            throw ParseError(cur.line.number,
                             "unknown state attribute \"" + key + "\"");
        }
    }
    if (!have_att) {
        throw ParseError(cur.line.number, "state is missing att_db_per_km");
    }
    if (!have_eta) {
        throw ParseError(cur.line.number, "state is missing eta");
    }
    return state;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            throw ConfigError("scenario strings cannot contain newlines");
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

ScenarioSpec parse_scenario_file(std::string_view text) {
    ScenarioSpec spec = parse_scenario_file_lenient(text);
    for (const Violation& v : validate_profile(spec.profile)) {
        throw ValidationError(v.rule + ": " + v.message);
    }
    return spec;
}

ScenarioSpec parse_scenario_file_lenient(std::string_view text) {
    const std::vector<Line> lines = significant_lines(text);
    if (lines.empty()) {
        throw ParseError(1, "empty scenario document");
    }

    ScenarioSpec spec;
    std::size_t i = 0;

    {
        Cursor cur{lines[i]};
        if (cur.take_word("directive") != "scenario") {
            throw ParseError(lines[i].number, "document must start with scenario \"<name>\"");
        }
        spec.name = cur.take_quoted("scenario name");
        cur.expect_end();
        ++i;
    }

    if (i >= lines.size()) {
        throw ParseError(lines.back().number, "missing mode line");
    }
    {
        Cursor cur{lines[i]};
        if (cur.take_word("directive") != "mode") {
            throw ParseError(lines[i].number, "expected mode paper|physical");
        }
        const std::string mode = cur.take_word("mode");
        if (mode == "paper") {
            spec.profile.mode = EvalMode::Paper;
        } else if (mode == "physical") {
            spec.profile.mode = EvalMode::Physical;
        } else {
            throw ParseError(lines[i].number,
                             "mode must be paper or physical, got \"" + mode + "\"");
        }
        cur.expect_end();
        ++i;
    }

    std::vector<std::string> notes;
    while (i < lines.size()) {
        Cursor cur{lines[i]};
        if (cur.take_word("directive") != "note") break;
        notes.push_back(cur.take_quoted("note text"));
        cur.expect_end();
        ++i;
    }
    for (std::size_t n = 0; n < notes.size(); ++n) {
        if (n > 0) spec.notes += '\n';
        spec.notes += notes[n];
    }

    while (i < lines.size()) {
        Cursor cur{lines[i]};
        const std::string directive = cur.take_word("directive");
        if (directive != "slab") {
            throw ParseError(lines[i].number,
                             "expected slab <base_km> <top_km>, got \"" +
                                 directive + "\"");
        }
        Slab slab;
        slab.base_km = cur.take_number("slab base_km");
        slab.top_km = cur.take_number("slab top_km");
        cur.expect_end();
        ++i;

        while (i < lines.size()) {
            Cursor state_cur{lines[i]};
            if (state_cur.take_word("directive") != "state") break;
            slab.states.push_back(parse_state_line(state_cur));
            ++i;
        }
        if (slab.states.empty()) {
            throw ParseError(lines[i - 1].number,
                             "slab needs at least one state line");
        }
        spec.profile.slabs.push_back(std::move(slab));
    }

    if (spec.profile.slabs.empty()) {
        throw ParseError(lines.back().number, "scenario has no slab blocks");
    }

    spec.profile.name = spec.name;
    return spec;
}

std::string serialize_scenario(const ScenarioSpec& spec) {
    std::string out;
    out += "scenario " + quoted(spec.name) + "\n";
    out += spec.profile.mode == EvalMode::Paper ? "mode paper\n" : "mode physical\n";

    if (!spec.notes.empty()) {
        std::size_t pos = 0;
        while (pos <= spec.notes.size()) {
            const std::size_t nl = spec.notes.find('\n', pos);
            const std::string note_line =
                spec.notes.substr(pos, nl == std::string::npos ? std::string::npos
                                                               : nl - pos);
            out += "note " + quoted(note_line) + "\n";
            if (nl == std::string::npos) break;
            pos = nl + 1;
        }
    }

    for (const Slab& slab : spec.profile.slabs) {
        out += "slab " + format_literal(slab.base_km) + " " +
               format_literal(slab.top_km) + "\n";
        for (const LayerState& state : slab.states) {
            if (state.attenuation.unit != ExtinctionUnit::DbPerKm) {
                throw ConfigError("scenario files store extinction in dB/km");
            }
            out += "  state " + quoted(state.label) +
                   " att_db_per_km=" + format_literal(state.attenuation.value) +
                   " eta=" + format_literal(state.probability);
            if (state.visibility_km) {
                out += " visibility_km=" + format_literal(*state.visibility_km);
            }
            out += "\n";
        }
    }
    return out;
}

bool structurally_equal(const ScenarioSpec& a, const ScenarioSpec& b) {
    return a.name == b.name && a.notes == b.notes && a.profile == b.profile;
}

}  // namespace slantpath
