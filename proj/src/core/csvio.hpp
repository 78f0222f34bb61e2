#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "analytic.hpp"
#include "eigensolve.hpp"
#include "grid.hpp"
#include "nodal.hpp"
#include "partition.hpp"

namespace minpart {

// Plot-ready serializers. Every formatter is a pure function of its input
// with fixed formatting, so identical data gives identical bytes.

std::string format_double(double v);

// index,value_over_pi2,value,m,n,multiplicity,deck_class; index counts
// eigenvalues from 1 and steps by multiplicity.
std::string spectrum_csv(const CylinderSpectrum& s);

// index,value,residual,cluster with a 1-based index.
std::string eigenvalues_csv(const std::vector<EigenPair>& pairs);

// Grid scalars: one CSV line per transverse row (bottom first), one column
// per angular cell.
std::string field_csv(const std::vector<double>& u, const Grid& g);
std::string labels_csv(const std::vector<int>& labels, const Grid& g);

// sweep,lambda_max,moved
std::string history_csv(const std::vector<SweepRecord>& history);

// One "i j shared_faces" line per edge.
std::string graph_edges_text(const NeighborGraph& graph);

// Plain-text portable graymap (P2), one shade per label, top row first.
std::string labels_pgm(const std::vector<int>& labels, const Grid& g);

std::uint64_t fnv1a64(const std::string& bytes);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Collects the files one command run produces under a fixed root and ends
// with a manifest naming each artifact and its checksum.
class ArtifactSink {
public:
    explicit ArtifactSink(std::string root);

    // Writes root/relpath (creating directories) and records the checksum.
    void write(const std::string& relpath, const std::string& content);

    // root/manifest.txt, one "fnv1a64 <hex> <relpath>" line per artifact,
    // sorted by path.
    void write_manifest() const;

    const std::string& root() const { return root_; }
    std::vector<std::string> paths() const;

private:
    std::string root_;
    std::vector<std::pair<std::string, std::uint64_t>> entries_;
};

} // namespace minpart
