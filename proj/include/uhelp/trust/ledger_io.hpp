#pragma once

#include "uhelp/trust/trust_model.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace uhelp::trust {

class LedgerFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Rating file: a header line followed by one tab-separated record per rating
//
//   # uhelp-ledger v1 owner=<name>
//   <requester>\t<volunteer>\t<activity>\t<object>\t<value>\t<time>\t<request|->
//
// Activities and objects are written by label. Lines starting with '#' after
// the header are comments.
std::string write_ratings(const RatingLedger& ledger, const Ontologies& onto);

// Override file: one `<counterpart>\t<activity>\t<trust>` line per override,
// after a `# uhelp-overrides v1 owner=<name>` header. Trust values are
// printed in shortest round-trip form.
std::string write_overrides(const RatingLedger& ledger, const Ontologies& onto);

// Parses both files back into a ledger. `overrides` may be empty.
RatingLedger read_ledger(std::string_view ratings, std::string_view overrides, const Ontologies& onto);

void save_ledger(const RatingLedger& ledger, const std::filesystem::path& dir, const Ontologies& onto);
// Returns nullopt when no ledger file exists for `owner` in `dir`.
std::optional<RatingLedger> load_ledger(const NodeId& owner, const std::filesystem::path& dir,
                                        const Ontologies& onto);

std::filesystem::path ratings_path(const std::filesystem::path& dir, const NodeId& owner);
std::filesystem::path overrides_path(const std::filesystem::path& dir, const NodeId& owner);

// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);
double parse_double(std::string_view text);

} // namespace uhelp::trust
