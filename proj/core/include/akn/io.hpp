#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "akn/packing.hpp"

namespace akn {

/// Packing file format (JSON, format_version 1):
///   {
///     "format_version": 1,
///     "chart": "s3" | "r3",
///     "balls": [ {"center": [w,x,y,z], "radius_rad": a}   (s3)
///              | {"center": [x,y,z],   "radius": r} ... ] (r3)
///     "labels": ["...", ...]   (optional, one per ball)
///   }
/// Numbers are written with 17 significant digits so that save followed by
/// load reproduces every double bit-for-bit.

/// Parses and validates a packing file. Malformed JSON or schema violations
/// raise ParseError with field context; an unknown chart string raises
/// UnsupportedChartError.
Packing load_packing(const std::string& path);
Packing load_packing_stream(std::istream& in, const std::string& origin);

void save_packing(const Packing& packing, const std::string& path);
void save_packing_stream(const Packing& packing, std::ostream& out);

/// One row of the convergence table for the layered packings.
struct ConvergenceRow {
    long long n = 0;
    long long ball_count = 0;     // 118 + 106 n
    long long tangency_count = 0; // 696 + 666 n
    double k = 0.0;               // 2 * tangency_count / ball_count
    double gap = 0.0;             // 666/53 - k = 4812 / (53 (118 + 106 n)) > 0
};

/// Rows n = 0..max_n from the exact count recurrence. Pure integer
/// bookkeeping: valid for any n, far beyond materializable depths.
std::vector<ConvergenceRow> report_convergence(long long max_n);

/// CSV with fixed header "n,balls,tangencies,k,gap", k to 7 decimal places,
/// gap to 10; deterministic bytes for identical inputs.
void write_convergence_csv(const std::vector<ConvergenceRow>& rows, std::ostream& out);

} // namespace akn
