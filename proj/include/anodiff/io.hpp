#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>

#include "anodiff/cantor.hpp"
#include "anodiff/scaling.hpp"

namespace anodiff::io {

/// Formats a double with 17 significant digits (lossless round trip).
std::string g17(double v);

/// CSV schema: level,index,left,right,kind. Interval rows carry the
/// construction level and their left-to-right position; gap rows carry the
/// hierarchy level at which the gap was removed and their 0-based
/// left-to-right position within that level.
void write_prefractal_csv(std::ostream& os, const cantor::Prefractal& pf);

/// CSV schema: t,msd,stderr,n.
void write_msd_csv(std::ostream& os, const scaling::MsdSeries& series);
scaling::MsdSeries read_msd_csv(std::istream& is);

/// CSV schema: u,tau,W with one row per (u, tau) node of a propagator slice.
void write_propagator_slice_csv(std::ostream& os, std::span<const double> u,
                                std::span<const double> tau, std::span<const double> w);

/// Writes through a temp file in the target directory and renames on
/// success, so failures never leave partial output behind.
void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& producer);

}  // namespace anodiff::io
