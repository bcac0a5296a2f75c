#pragma once

#include <iosfwd>
#include <string>

#include "homfill/builders.hpp"
#include "homfill/chain.hpp"
#include "homfill/hypfill.hpp"
#include "homfill/profiler.hpp"

namespace homfill {

inline constexpr const char* kVersion = "homfill 0.1.0";

// All formats are line-oriented structured text with canonical ordering, so
// identical inputs serialize byte-identically.

void save_complex(std::ostream& os, const Complex& cx);
void save_complex_file(const std::string& path, const Complex& cx);
BuiltSpace load_complex(std::istream& is);
BuiltSpace load_complex_file(const std::string& path);

void save_chain(std::ostream& os, const Chain& c);
void save_chain_file(const std::string& path, const Chain& c);
Chain load_chain(std::istream& is, const ComplexPtr& cx);
Chain load_chain_file(const std::string& path, const ComplexPtr& cx);

void save_profile(std::ostream& os, const IsoProfile& p);
void save_profile_file(const std::string& path, const IsoProfile& p);
IsoProfile load_profile(std::istream& is);
IsoProfile load_profile_file(const std::string& path);

Presentation load_presentation(std::istream& is);
Presentation load_presentation_file(const std::string& path);

void save_trace(std::ostream& os, const ReductionTrace& trace);
void save_trace_file(const std::string& path, const ReductionTrace& trace);

// Summary record for a filling run (stable key order, no volatile fields).
void save_fill_summary(std::ostream& os, const FillingResult& result, const NormedRing& ring);

// Plot data: l, f_hat, fitted value rows with the exponent in the header.
void emit_plotdata(std::ostream& os, const IsoProfile& p, const GrowthClass& g);

}  // namespace homfill
