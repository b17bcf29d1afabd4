/*
 * Copyright (C) 2026 The sirctl Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "sirctl/sweep.hpp"

namespace sirctl::cli {
namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out)
{
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

bool parse_int(std::string_view text, int& out)
{
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, out);
    return ec == std::errc() && ptr == end;
}

using Setter = std::function<bool(Config&, std::string_view)>;

Setter real(double Config::*field)
{
    return [field](Config& c, std::string_view v) { return parse_double(v, c.*field); };
}

Setter real(double ModelParams::*field)
{
    return [field](Config& c, std::string_view v) { return parse_double(v, c.params.*field); };
}

const std::map<std::string_view, Setter>& setters()
{
    static const std::map<std::string_view, Setter> table = {
        {"beta", real(&ModelParams::beta)},
        {"alpha", real(&ModelParams::alpha)},
        {"c1", real(&ModelParams::c1)},
        {"c2", real(&ModelParams::c2)},
        {"c3", real(&ModelParams::c3)},
        {"u1_max", real(&ModelParams::u1_max)},
        {"u2_max", real(&ModelParams::u2_max)},
        {"horizon", real(&ModelParams::horizon)},
        {"s0", real(&ModelParams::s0)},
        {"i0", real(&ModelParams::i0)},
        {"r0", real(&ModelParams::r0)},
        {"n_steps", [](Config& c, std::string_view v) { return parse_int(v, c.params.n_steps); }},
        {"functional",
         [](Config& c, std::string_view v) {
             if (v == "new")
                 c.params.functional = Functional::New;
             else if (v == "legacy")
                 c.params.functional = Functional::Legacy;
             else
                 return false;
             return true;
         }},
        {"residual_tol", [](Config& c, std::string_view v) { return parse_double(v, c.shooting.residual_tol); }},
        {"max_newton_iters", [](Config& c, std::string_view v) { return parse_int(v, c.shooting.max_newton_iters); }},
        {"fd_epsilon", [](Config& c, std::string_view v) { return parse_double(v, c.shooting.fd_epsilon); }},
        {"damping_halvings", [](Config& c, std::string_view v) { return parse_int(v, c.shooting.damping_halvings); }},
        {"sweep_relaxation", [](Config& c, std::string_view v) { return parse_double(v, c.sweep_solver.relaxation); }},
        {"sweep_max_iters", [](Config& c, std::string_view v) { return parse_int(v, c.sweep_solver.max_iters); }},
        {"sweep_tol", [](Config& c, std::string_view v) { return parse_double(v, c.sweep_solver.tol); }},
        {"sweep_alpha_min", real(&Config::sweep_alpha_min)},
        {"sweep_alpha_max", real(&Config::sweep_alpha_max)},
        {"sweep_points", [](Config& c, std::string_view v) { return parse_int(v, c.sweep_points); }},
        {"oracle_intervals", [](Config& c, std::string_view v) { return parse_int(v, c.oracle_intervals); }},
        {"oracle_levels", [](Config& c, std::string_view v) { return parse_int(v, c.oracle_levels); }},
    };
    return table;
}

void check_options(const Config& c, std::vector<FieldViolation>& out)
{
    if (!(c.shooting.residual_tol > 0.0))
        out.push_back({"residual_tol", "must be positive"});
    if (c.shooting.max_newton_iters < 1)
        out.push_back({"max_newton_iters", "must be at least 1"});
    if (!(c.shooting.fd_epsilon > 0.0))
        out.push_back({"fd_epsilon", "must be positive"});
    if (c.shooting.damping_halvings < 0)
        out.push_back({"damping_halvings", "must be non-negative"});
    if (!(c.sweep_solver.relaxation > 0.0 && c.sweep_solver.relaxation <= 1.0))
        out.push_back({"sweep_relaxation", "must lie in (0, 1]"});
    if (c.sweep_solver.max_iters < 1)
        out.push_back({"sweep_max_iters", "must be at least 1"});
    if (!(c.sweep_solver.tol > 0.0))
        out.push_back({"sweep_tol", "must be positive"});
    if (!(c.sweep_alpha_min >= 0.0))
        out.push_back({"sweep_alpha_min", "must be non-negative"});
    if (c.sweep_points < 1)
        out.push_back({"sweep_points", "must be at least 1"});
    else if (c.sweep_points > 1 && !(c.sweep_alpha_max > c.sweep_alpha_min))
        out.push_back({"sweep_alpha_max", "must exceed sweep_alpha_min"});
    if (c.oracle_intervals < 1)
        out.push_back({"oracle_intervals", "must be at least 1"});
    if (c.oracle_levels < 1)
        out.push_back({"oracle_levels", "must be at least 1"});
}

std::string join(const std::vector<FieldViolation>& v)
{
    std::string msg = "invalid configuration:";
    for (const auto& e : v)
        msg += "\n  " + e.field + ": " + e.reason;
    return msg;
}

} // namespace

ConfigError::ConfigError(std::vector<FieldViolation> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations))
{
}

std::vector<double> Config::sweep_alphas() const
{
    return linspace(sweep_alpha_min, sweep_alpha_max, sweep_points);
}

const std::vector<std::string_view>& required_keys()
{
    static const std::vector<std::string_view> keys = {"beta",   "alpha",   "c1", "c2", "c3",
                                                       "u1_max", "u2_max", "horizon", "s0", "i0"};
    return keys;
}

Config parse_config(std::string_view text)
{
    Config cfg;
    std::vector<FieldViolation> errors;
    std::set<std::string, std::less<>> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            errors.push_back({"line " + std::to_string(line_no), "expected 'key = value'"});
            continue;
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        const auto it = setters().find(key);
        if (it == setters().end()) {
            errors.push_back({std::string(key), "unknown key"});
            continue;
        }
        if (!seen.insert(std::string(key)).second) {
            errors.push_back({std::string(key), "duplicate key"});
            continue;
        }
        if (value.empty() || !it->second(cfg, value))
            errors.push_back({std::string(key), "cannot parse value '" + std::string(value) + "'"});
    }

    for (const auto key : required_keys()) {
        if (!seen.contains(key))
            errors.push_back({std::string(key), "is required"});
    }

    // Range checks only for fields that parsed, so one bad value is reported once.
    for (auto& v : cfg.params.violations()) {
        const bool already = std::any_of(errors.begin(), errors.end(),
                                         [&](const FieldViolation& e) { return e.field == v.field; });
        if (!already)
            errors.push_back(std::move(v));
    }
    check_options(cfg, errors);

    if (!errors.empty())
        throw ConfigError(std::move(errors));
    return cfg;
}

Config load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({{"config", "cannot open " + path.string()}});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

Config default_config()
{
    return Config{};
}

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, ptr);
}

std::vector<std::string> describe(const Config& c)
{
    const ModelParams& p = c.params;
    auto kv = [](std::string_view k, const std::string& v) { return std::string(k) + " = " + v; };
    auto num = [&](std::string_view k, double v) { return kv(k, format_number(v)); };
    auto integer = [&](std::string_view k, int v) { return kv(k, std::to_string(v)); };
    return {
        num("beta", p.beta),
        num("alpha", p.alpha),
        num("c1", p.c1),
        num("c2", p.c2),
        num("c3", p.c3),
        num("u1_max", p.u1_max),
        num("u2_max", p.u2_max),
        num("horizon", p.horizon),
        num("s0", p.s0),
        num("i0", p.i0),
        num("r0", p.r0),
        integer("n_steps", p.n_steps),
        kv("functional", std::string(to_string(p.functional))),
        num("residual_tol", c.shooting.residual_tol),
        integer("max_newton_iters", c.shooting.max_newton_iters),
        num("fd_epsilon", c.shooting.fd_epsilon),
        integer("damping_halvings", c.shooting.damping_halvings),
        num("sweep_relaxation", c.sweep_solver.relaxation),
        integer("sweep_max_iters", c.sweep_solver.max_iters),
        num("sweep_tol", c.sweep_solver.tol),
        num("sweep_alpha_min", c.sweep_alpha_min),
        num("sweep_alpha_max", c.sweep_alpha_max),
        integer("sweep_points", c.sweep_points),
        integer("oracle_intervals", c.oracle_intervals),
        integer("oracle_levels", c.oracle_levels),
    };
}

} // namespace sirctl::cli
