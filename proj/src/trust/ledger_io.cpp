#include "uhelp/trust/ledger_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace uhelp::trust {

std::string format_double(double x)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{})
        throw std::runtime_error("cannot format double");
    return std::string(buf, end);
}

double parse_double(std::string_view text)
{
    double x = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw LedgerFormatError("not a number: '" + std::string(text) + "'");
    return x;
}

namespace {

template <typename Int>
Int parse_int(std::string_view text)
{
    Int x{};
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
    if (ec != std::errc{} || end != text.data() + text.size())
        throw LedgerFormatError("not an integer: '" + std::string(text) + "'");
    return x;
}

std::vector<std::string_view> split_tabs(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find('\t', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> lines_of(std::string_view text)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start < text.size()) {
        auto pos = text.find('\n', start);
        auto line = text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        out.push_back(line);
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

void check_label(const std::string& label)
{
    if (label.find_first_of("\t\n\r") != std::string::npos)
        throw LedgerFormatError("label contains a tab or newline: '" + label + "'");
}

NodeId parse_header(std::string_view line, std::string_view magic)
{
    const std::string prefix = "# " + std::string(magic) + " owner=";
    if (line.substr(0, prefix.size()) != prefix)
        throw LedgerFormatError("missing '" + std::string(magic) + "' header");
    auto owner = line.substr(prefix.size());
    if (owner.empty())
        throw LedgerFormatError("header without owner");
    return NodeId(std::string(owner));
}

} // namespace

std::string write_ratings(const RatingLedger& ledger, const Ontologies& onto)
{
    std::ostringstream out;
    out << "# uhelp-ledger v1 owner=" << ledger.owner().str() << '\n';
    for (const auto& r : ledger.entries()) {
        check_label(r.requester.str());
        check_label(r.volunteer.str());
        out << r.requester.str() << '\t' << r.volunteer.str() << '\t' << onto.activities.label(r.activity)
            << '\t' << onto.objects.label(r.object) << '\t' << r.value << '\t' << r.time << '\t';
        if (r.request)
            out << r.request->value;
        else
            out << '-';
        out << '\n';
    }
    return out.str();
}

std::string write_overrides(const RatingLedger& ledger, const Ontologies& onto)
{
    std::ostringstream out;
    out << "# uhelp-overrides v1 owner=" << ledger.owner().str() << '\n';
    for (const auto& [key, value] : ledger.overrides())
        out << key.counterpart.str() << '\t' << onto.activities.label(key.activity) << '\t'
            << format_double(value) << '\n';
    return out.str();
}

RatingLedger read_ledger(std::string_view ratings, std::string_view overrides, const Ontologies& onto)
{
    const auto lines = lines_of(ratings);
    if (lines.empty())
        throw LedgerFormatError("empty ledger file");
    RatingLedger ledger(parse_header(lines.front(), "uhelp-ledger v1"));

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = lines[i];
        if (line.empty() || line.front() == '#')
            continue;
        const auto f = split_tabs(line);
        if (f.size() != 7)
            throw LedgerFormatError("ledger line " + std::to_string(i + 1) + ": expected 7 fields");
        try {
            Rating r;
            r.requester = NodeId(std::string(f[0]));
            r.volunteer = NodeId(std::string(f[1]));
            r.activity = onto.activities.id(f[2]);
            r.object = onto.objects.id(f[3]);
            r.value = parse_int<int>(f[4]);
            r.time = parse_int<Timestamp>(f[5]);
            if (f[6] != "-")
                r.request = TaskId{parse_int<std::uint64_t>(f[6])};
            ledger.restore(r);
        } catch (const std::exception& e) {
            throw LedgerFormatError("ledger line " + std::to_string(i + 1) + ": " + e.what());
        }
    }

    if (!overrides.empty()) {
        const auto olines = lines_of(overrides);
        const NodeId owner = parse_header(olines.front(), "uhelp-overrides v1");
        if (owner != ledger.owner())
            throw LedgerFormatError("override file owner '" + owner.str() + "' does not match ledger owner");
        for (std::size_t i = 1; i < olines.size(); ++i) {
            const auto line = olines[i];
            if (line.empty() || line.front() == '#')
                continue;
            const auto f = split_tabs(line);
            if (f.size() != 3)
                throw LedgerFormatError("override line " + std::to_string(i + 1) + ": expected 3 fields");
            try {
                ledger.set_override(OverrideKey{NodeId(std::string(f[0])), onto.activities.id(f[1])},
                                    parse_double(f[2]));
            } catch (const std::exception& e) {
                throw LedgerFormatError("override line " + std::to_string(i + 1) + ": " + e.what());
            }
        }
    }
    return ledger;
}

std::filesystem::path ratings_path(const std::filesystem::path& dir, const NodeId& owner)
{
    return dir / (owner.str() + ".ledger");
}

std::filesystem::path overrides_path(const std::filesystem::path& dir, const NodeId& owner)
{
    return dir / (owner.str() + ".overrides");
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

void save_ledger(const RatingLedger& ledger, const std::filesystem::path& dir, const Ontologies& onto)
{
    std::filesystem::create_directories(dir);
    write_file(ratings_path(dir, ledger.owner()), write_ratings(ledger, onto));
    write_file(overrides_path(dir, ledger.owner()), write_overrides(ledger, onto));
}

std::optional<RatingLedger> load_ledger(const NodeId& owner, const std::filesystem::path& dir,
                                        const Ontologies& onto)
{
    const auto rp = ratings_path(dir, owner);
    if (!std::filesystem::exists(rp))
        return std::nullopt;
    const auto op = overrides_path(dir, owner);
    const std::string overrides = std::filesystem::exists(op) ? read_file(op) : std::string{};
    auto ledger = read_ledger(read_file(rp), overrides, onto);
    if (ledger.owner() != owner)
        throw LedgerFormatError("ledger file " + rp.string() + " belongs to '" + ledger.owner().str() + "'");
    return ledger;
}

} // namespace uhelp::trust
