#pragma once

#include "markedpoints/envelope.hpp"
#include "markedpoints/intensity.hpp"
#include "markedpoints/network.hpp"
#include "markedpoints/pattern.hpp"
#include "markedpoints/summaries.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

namespace markedpoints {

/// Shortest round-trip decimal form ("%.17g"); NaN is written as "nan".
std::string format_number(double v);

/// Throws `io_error` with the path in the message.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// {"vertices": [[x, y], ...], "segments": [[i, j], ...]} with 0-based indices.
LinearNetwork parse_network_json(const std::string& text);
LinearNetwork read_network_json(const std::filesystem::path& path);
std::string network_to_json(const LinearNetwork& net);

/// CSV with a header row naming x,y or segment,offset plus optional type and
/// mark columns; '#' lines are comments and empty mark cells mean no mark.
/// The result is validated against the domain.
MarkedPointPattern parse_pattern_csv(const std::string& text, Domain domain);
MarkedPointPattern read_pattern_csv(const std::filesystem::path& path, Domain domain);
std::string pattern_to_csv(const MarkedPointPattern& p);

/// r,value[,theoretical] with the attributes in a leading comment block.
std::string curve_to_csv(const SummaryCurve& curve);
/// r followed by one column per curve; the curves must share the grid.
std::string curves_to_wide_csv(std::span<const SummaryCurve> curves);
/// r,lo,mean,hi,n_effective[,observed].
std::string band_to_csv(const EnvelopeBand& band);
/// cx,cy,value, one row per cell, with method, sigma and grid in a comment.
std::string intensity_to_csv(const IntensityEstimate& estimate);

} // namespace markedpoints
