#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "boxstab/box_stability.hpp"
#include "boxstab/cover.hpp"
#include "boxstab/distribution.hpp"
#include "boxstab/iso.hpp"
#include "boxstab/point_set.hpp"

namespace boxstab {

class ParseError : public std::runtime_error {
public:
    ParseError(int line_, int column_, const std::string& message)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + message),
          line(line_),
          column(column_) {}

    int line;
    int column;
};

// "pts" format: `d <dim>` on the first non-comment line, then one point per
// line as space-separated decimal integers. Comments start with '#'.
PointSet read_point_set(std::istream& in);
PointSet read_point_set_file(const std::string& path);
void write_point_set(std::ostream& out, const PointSet& s);
void write_point_set_file(const std::string& path, const PointSet& s);
std::string canonical_pts(const PointSet& s);

// Number of duplicate point lines dropped by the most recent read on this
// stream wrapper.
struct PointSetReadResult {
    PointSet set;
    std::int64_t duplicates_dropped;
};
PointSetReadResult read_point_set_verbose(std::istream& in);

// "cover" format: `d <dim>`, then one set per line as space-separated 1-based
// indices, optionally suffixed with `w=<num>` or `w=<num>/<den>`.
CoverFamily read_cover(std::istream& in);
CoverFamily read_cover_file(const std::string& path);
void write_cover(std::ostream& out, const CoverFamily& g);
void write_cover_file(const std::string& path, const CoverFamily& g);

// FNV-1a 64 over the canonical pts serialization, as 16 hex digits.
std::string content_hash(const PointSet& s);

// Decimal with 15 significant digits.
std::string format_real(long double x);
std::string rat_to_string(const Rat& q);  // "num/den", canonical
Rat rat_from_string(const std::string& text);

nlohmann::json to_json(const ExtReal& x);
nlohmann::json to_json(const LatticeBox& b);
nlohmann::json to_json(const CubeSpec& c);
nlohmann::json to_json(const TrimResult& t);
nlohmann::json to_json(const TightToInfoReport& r);
nlohmann::json to_json(const BoxStabilityReport& r);
nlohmann::json to_json(const Rectangle2d& r);
nlohmann::json to_json(const Certification& c);
nlohmann::json to_json(const IsoReport& r);
nlohmann::json to_json(const SharpnessProbe& p);

}  // namespace boxstab
