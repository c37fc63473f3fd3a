#include "nsd/pipeline.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nsd {

void Profile::validate() const
{
    if (!(large_frac > 0 && large_frac <= small_frac && small_frac < 1))
        throw std::invalid_argument("profile needs 0 < large_frac <= small_frac < 1");
    if (!(sampling_coef > 0))
        throw std::invalid_argument("profile needs sampling_coef > 0");
    if (!(b_coef1 > 0 && b_coef2 > 0))
        throw std::invalid_argument("profile needs positive B coefficients");
    if (!(medium_exponent > 0 && medium_exponent < 1) || !(aux_slack_exponent > 0 && aux_slack_exponent < 1))
        throw std::invalid_argument("profile exponents must lie in (0,1)");
    if (!(slack_coef > 0))
        throw std::invalid_argument("profile needs slack_coef > 0");
    if (min_delta < 1)
        throw std::invalid_argument("profile needs min_delta >= 1");
    if (global_restarts < 1 || local_events_per_vertex < 1)
        throw std::invalid_argument("profile restart caps must be positive");
}

ResamplePolicy Profile::policy(ResampleScope scope, int vertex_count) const
{
    if (scope == ResampleScope::global_restart)
        return {global_restarts, scope};
    auto n = static_cast<std::size_t>(std::max(vertex_count, 1));
    return {local_events_per_vertex * n, scope};
}

Profile Profile::paper()
{
    return Profile{};
}

Profile Profile::desk()
{
    Profile p;
    p.name = "desk";
    p.large_frac = 0.25;
    p.sampling_coef = 8.0;
    p.slack_coef = 3.0;
    p.aux_scope = ResampleScope::local_resample;
    p.base_scope = ResampleScope::local_resample;
    return p;
}

namespace {

    std::string_view trim(std::string_view s)
    {
        auto first = s.find_first_not_of(" \t\r");
        if (first == std::string_view::npos)
            return {};
        auto last = s.find_last_not_of(" \t\r");
        return s.substr(first, last - first + 1);
    }

    double parse_number(std::string_view text, std::string_view key)
    {
        auto fail = [&] { return std::invalid_argument("profile: bad value for " + std::string(key)); };
        auto slash = text.find('/');
        auto one = [&](std::string_view part) {
            part = trim(part);
            double value = 0;
            auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
            if (ec != std::errc() || ptr != part.data() + part.size())
                throw fail();
            return value;
        };
        if (slash == std::string_view::npos)
            return one(text);
        double den = one(text.substr(slash + 1));
        if (den == 0)
            throw fail();
        return one(text.substr(0, slash)) / den;
    }

    ResampleScope parse_scope(std::string_view text)
    {
        if (text == "global")
            return ResampleScope::global_restart;
        if (text == "local")
            return ResampleScope::local_resample;
        throw std::invalid_argument("profile: scope must be 'global' or 'local'");
    }

    std::string_view scope_name(ResampleScope s)
    {
        return s == ResampleScope::global_restart ? "global" : "local";
    }

} // namespace

Profile apply_overrides(Profile base, std::string_view text)
{
    std::size_t start = 0;
    int line_no = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("profile line " + std::to_string(line_no) + ": expected key=value");
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key == "name")
            base.name = std::string(value);
        else if (key == "base")
            continue; // consumed by load_profile
        else if (key == "small_frac")
            base.small_frac = parse_number(value, key);
        else if (key == "large_frac")
            base.large_frac = parse_number(value, key);
        else if (key == "medium_exponent")
            base.medium_exponent = parse_number(value, key);
        else if (key == "sampling_coef")
            base.sampling_coef = parse_number(value, key);
        else if (key == "b_coef1")
            base.b_coef1 = parse_number(value, key);
        else if (key == "b_coef2")
            base.b_coef2 = parse_number(value, key);
        else if (key == "aux_slack_exponent")
            base.aux_slack_exponent = parse_number(value, key);
        else if (key == "slack_coef")
            base.slack_coef = parse_number(value, key);
        else if (key == "min_delta")
            base.min_delta = static_cast<int>(parse_number(value, key));
        else if (key == "aux_scope")
            base.aux_scope = parse_scope(value);
        else if (key == "base_scope")
            base.base_scope = parse_scope(value);
        else if (key == "global_restarts")
            base.global_restarts = static_cast<std::size_t>(parse_number(value, key));
        else if (key == "local_events_per_vertex")
            base.local_events_per_vertex = static_cast<std::size_t>(parse_number(value, key));
        else
            throw std::invalid_argument("profile: unknown key '" + std::string(key) + "'");
    }
    base.validate();
    return base;
}

Profile load_profile(std::string_view name_or_path)
{
    if (name_or_path == "paper")
        return Profile::paper();
    if (name_or_path == "desk")
        return Profile::desk();
    std::ifstream in{std::string(name_or_path)};
    if (!in)
        throw std::invalid_argument("profile: '" + std::string(name_or_path) + "' is neither a preset nor a readable file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto text = buffer.str();

    Profile base = Profile::paper();
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        auto t = trim(line);
        if (t.starts_with("base")) {
            auto eq = t.find('=');
            if (eq != std::string_view::npos && trim(t.substr(0, eq)) == "base") {
                auto preset = trim(t.substr(eq + 1));
                if (preset == "desk")
                    base = Profile::desk();
                else if (preset != "paper")
                    throw std::invalid_argument("profile: unknown base preset");
            }
        }
    }
    base.name = std::string(name_or_path);
    return apply_overrides(base, text);
}

std::string to_text(const Profile& p)
{
    std::ostringstream out;
    out.precision(17);
    out << "name=" << p.name << '\n'
        << "small_frac=" << p.small_frac << '\n'
        << "large_frac=" << p.large_frac << '\n'
        << "medium_exponent=" << p.medium_exponent << '\n'
        << "sampling_coef=" << p.sampling_coef << '\n'
        << "b_coef1=" << p.b_coef1 << '\n'
        << "b_coef2=" << p.b_coef2 << '\n'
        << "aux_slack_exponent=" << p.aux_slack_exponent << '\n'
        << "slack_coef=" << p.slack_coef << '\n'
        << "min_delta=" << p.min_delta << '\n'
        << "aux_scope=" << scope_name(p.aux_scope) << '\n'
        << "base_scope=" << scope_name(p.base_scope) << '\n'
        << "global_restarts=" << p.global_restarts << '\n'
        << "local_events_per_vertex=" << p.local_events_per_vertex << '\n';
    return out.str();
}

namespace {

    std::int64_t isqrt(std::int64_t x)
    {
        auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
        while (r * r > x)
            --r;
        while ((r + 1) * (r + 1) <= x)
            ++r;
        return r;
    }

} // namespace

double delta_power(int delta, double exponent)
{
    if (delta < 0)
        throw std::invalid_argument("negative degree");
    if (exponent == 0.5) {
        auto r = isqrt(delta);
        return r * r == delta ? static_cast<double>(r) : std::sqrt(static_cast<double>(delta));
    }
    if (exponent == 1.0 / 3.0) {
        auto r = std::llround(std::cbrt(static_cast<double>(delta)));
        return r * r * r == delta ? static_cast<double>(r) : std::cbrt(static_cast<double>(delta));
    }
    return std::pow(static_cast<double>(delta), exponent);
}

int compute_B(int delta, const Profile& profile)
{
    if (delta < 1)
        throw std::invalid_argument("compute_B needs delta >= 1");
    long double value = static_cast<long double>(profile.b_coef1) * delta_power(delta, 0.5)
        + static_cast<long double>(profile.b_coef2) * delta_power(delta, 1.0 / 3.0);
    return static_cast<int>(std::ceil(value));
}

Colour absolute_bound(int delta)
{
    // ⌊95√Δ⌋ = ⌊√(9025·Δ)⌋
    return delta + isqrt(9025LL * delta);
}

std::optional<std::string> StageRecord::detail(std::string_view key) const
{
    for (const auto& [k, v] : details)
        if (k == key)
            return v;
    return std::nullopt;
}

std::size_t StageTrace::total_restarts() const
{
    std::size_t total = 0;
    for (const auto& s : stages)
        total += s.restarts;
    return total;
}

const StageRecord* StageTrace::find(std::string_view stage) const
{
    for (const auto& s : stages)
        if (s.stage == stage)
            return &s;
    return nullptr;
}

std::string StageTrace::serialize() const
{
    std::ostringstream out;
    out << "stage=summary delta=" << delta << " m0=" << m0 << " m_prime=" << m_prime << " B=" << B
        << " relative_bound=" << relative_bound() << " absolute_bound=" << absolute_bound(delta) << '\n';
    for (const auto& s : stages) {
        out << "stage=" << s.stage << " restarts=" << s.restarts << " palette=" << s.palette
            << " modified=" << s.modified_edges;
        for (const auto& [k, v] : s.details)
            out << ' ' << k << '=' << v;
        out << '\n';
    }
    return out.str();
}

} // namespace nsd
