#include "latc/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace latc {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

double parse_double(const std::string& cell, const std::string& where) {
    try {
        std::size_t used = 0;
        double v = std::stod(cell, &used);
        if (used != cell.size()) throw ParseError(where + ": trailing characters in '" + cell + "'");
        if (!std::isfinite(v)) throw ParseError(where + ": non-finite value '" + cell + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError(where + ": cannot parse '" + cell + "' as a number");
    } catch (const std::out_of_range&) {
        throw ParseError(where + ": value out of range '" + cell + "'");
    }
}

long long parse_int(const std::string& cell, const std::string& where) {
    try {
        std::size_t used = 0;
        long long v = std::stoll(cell, &used);
        if (used != cell.size()) throw ParseError(where + ": trailing characters in '" + cell + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError(where + ": cannot parse '" + cell + "' as an integer");
    } catch (const std::out_of_range&) {
        throw ParseError(where + ": value out of range '" + cell + "'");
    }
}

std::vector<std::vector<std::string>> read_rows(const std::string& path, char delimiter) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        rows.push_back(split(line, delimiter));
    }
    // a trailing newline leaves one empty pseudo-row; drop such tail rows
    while (!rows.empty() && rows.back().size() == 1 && trim(rows.back()[0]).empty()) rows.pop_back();
    if (rows.empty()) throw ParseError("'" + path + "' is empty");
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) throw ParseError("'" + path + "' has ragged rows");
    return rows;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    for (const auto& l : lines) out << l << '\n';
    if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

TimeSeriesMatrix load_csv(const DatasetDescriptor& desc) {
    auto rows = read_rows(desc.path, desc.delimiter);
    const Index nrows = static_cast<Index>(rows.size());
    const Index ncols = static_cast<Index>(rows[0].size());
    const std::string missing = lower(desc.missing_token);

    TimeSeriesMatrix y;
    y.values = Matrix::Zero(nrows, ncols);
    y.mask = Mask::Constant(nrows, ncols, true);
    for (Index r = 0; r < nrows; ++r) {
        for (Index c = 0; c < ncols; ++c) {
            std::string cell = trim(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
            if (cell.empty() || lower(cell) == missing) {
                y.mask(r, c) = false;
                continue;
            }
            y.values(r, c) = parse_double(
                cell, desc.path + " row " + std::to_string(r + 1) + " col " + std::to_string(c + 1));
        }
    }
    return y;
}

void write_csv(const Matrix& m, const std::string& path, char delimiter) {
    std::vector<std::string> lines;
    lines.reserve(static_cast<std::size_t>(m.rows()));
    for (Index r = 0; r < m.rows(); ++r) {
        std::string line;
        for (Index c = 0; c < m.cols(); ++c) {
            if (c > 0) line += delimiter;
            line += format_value(m(r, c));
        }
        lines.push_back(std::move(line));
    }
    write_lines(path, lines);
}

void write_csv(const TimeSeriesMatrix& y, const std::string& path, char delimiter) {
    y.validate();
    std::vector<std::string> lines;
    lines.reserve(static_cast<std::size_t>(y.values.rows()));
    for (Index r = 0; r < y.values.rows(); ++r) {
        std::string line;
        for (Index c = 0; c < y.values.cols(); ++c) {
            if (c > 0) line += delimiter;
            if (y.mask(r, c)) line += format_value(y.values(r, c));
        }
        lines.push_back(std::move(line));
    }
    write_lines(path, lines);
}

Mask load_mask_csv(const std::string& path, char delimiter) {
    auto rows = read_rows(path, delimiter);
    const Index nrows = static_cast<Index>(rows.size());
    const Index ncols = static_cast<Index>(rows[0].size());
    Mask mask(nrows, ncols);
    for (Index r = 0; r < nrows; ++r) {
        for (Index c = 0; c < ncols; ++c) {
            std::string cell = trim(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
            if (cell == "0")
                mask(r, c) = false;
            else if (cell == "1")
                mask(r, c) = true;
            else
                throw ParseError(path + ": mask cells must be 0 or 1, got '" + cell + "'");
        }
    }
    return mask;
}

void write_mask_csv(const Mask& mask, const std::string& path, char delimiter) {
    std::vector<std::string> lines;
    lines.reserve(static_cast<std::size_t>(mask.rows()));
    for (Index r = 0; r < mask.rows(); ++r) {
        std::string line;
        for (Index c = 0; c < mask.cols(); ++c) {
            if (c > 0) line += delimiter;
            line += mask(r, c) ? '1' : '0';
        }
        lines.push_back(std::move(line));
    }
    write_lines(path, lines);
}

TimeSeriesMatrix trim_to_seasons(const TimeSeriesMatrix& y, Index season_length) {
    y.validate();
    if (season_length < 1) throw DimensionError("trim_to_seasons: season_length must be >= 1");
    if (y.time_points() < season_length)
        throw DimensionError("trim_to_seasons: fewer columns than one season");
    const Index keep = (y.time_points() / season_length) * season_length;
    TimeSeriesMatrix out;
    out.values = y.values.rightCols(keep);
    out.mask = y.mask.rightCols(keep);
    return out;
}

void set_config_key(SolverConfig& config, const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    const std::string where = "config key '" + key + "'";
    auto as_double = [&] {
        try {
            return parse_double(v, where);
        } catch (const ParseError& e) {
            throw ConfigError(e.what());
        }
    };
    auto as_int = [&] {
        try {
            return parse_int(v, where);
        } catch (const ParseError& e) {
            throw ConfigError(e.what());
        }
    };

    if (key == "alpha1")
        config.alpha[0] = as_double();
    else if (key == "alpha2")
        config.alpha[1] = as_double();
    else if (key == "alpha3")
        config.alpha[2] = as_double();
    else if (key == "rho0")
        config.rho0 = as_double();
    else if (key == "rho_max")
        config.rho_max = as_double();
    else if (key == "c0")
        config.c0 = as_double();
    else if (key == "theta")
        config.theta = static_cast<int>(as_int());
    else if (key == "epsilon")
        config.epsilon = as_double();
    else if (key == "max_iters")
        config.max_iters = static_cast<int>(as_int());
    else if (key == "seed") {
        long long s = as_int();
        if (s < 0) throw ConfigError("config key 'seed': must be nonnegative");
        config.seed = static_cast<std::uint64_t>(s);
    } else if (key == "lags") {
        std::vector<Index> lags;
        for (const std::string& part : split(v, ',')) {
            std::string p = trim(part);
            if (p.empty()) throw ConfigError("config key 'lags': empty entry in list");
            try {
                lags.push_back(static_cast<Index>(parse_int(p, where)));
            } catch (const ParseError& e) {
                throw ConfigError(e.what());
            }
        }
        config.lags = LagSet(std::move(lags));
    } else if (key == "lambda_tracks_rho") {
        const std::string b = lower(v);
        if (b == "1" || b == "true")
            config.lambda_tracks_rho = true;
        else if (b == "0" || b == "false")
            config.lambda_tracks_rho = false;
        else
            throw ConfigError("config key 'lambda_tracks_rho': expected 0/1/true/false");
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

void load_config_file(SolverConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        set_config_key(config, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
}

std::vector<std::pair<std::string, std::string>> config_report_entries(const SolverConfig& config,
                                                                       Index season_length) {
    const LagSet lags =
        config.lags.count() > 0 ? config.lags : LagSet::default_for_season(season_length);
    std::string lag_list;
    for (Index i = 0; i < lags.count(); ++i) {
        if (i > 0) lag_list += ',';
        lag_list += std::to_string(lags[i]);
    }
    std::vector<std::pair<std::string, std::string>> entries;
    entries.emplace_back("alpha1", format_value(config.alpha[0]));
    entries.emplace_back("alpha2", format_value(config.alpha[1]));
    entries.emplace_back("alpha3", format_value(config.alpha[2]));
    entries.emplace_back("rho0", format_value(config.rho0));
    entries.emplace_back("rho_max", format_value(config.resolved_rho_max()));
    entries.emplace_back("c0", format_value(config.c0));
    entries.emplace_back("theta", std::to_string(config.theta));
    entries.emplace_back("epsilon", format_value(config.epsilon));
    entries.emplace_back("max_iters", std::to_string(config.max_iters));
    entries.emplace_back("seed", std::to_string(config.seed));
    entries.emplace_back("lags", lag_list);
    entries.emplace_back("lambda_tracks_rho", config.lambda_tracks_rho ? "1" : "0");
    return entries;
}

}  // namespace latc
