#include "csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace minpart {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string spectrum_csv(const CylinderSpectrum& s) {
    std::ostringstream os;
    os << "index,value_over_pi2,value,m,n,multiplicity,deck_class\n";
    int index = 1;
    for (const SpectrumEntry& e : s.entries) {
        os << index << ',' << e.value_over_pi2.to_fraction_string() << ','
           << format_double(e.value) << ',' << e.m << ',' << e.n << ',' << e.multiplicity << ','
           << to_string(e.deck_class) << '\n';
        index += e.multiplicity;
    }
    return os.str();
}

std::string eigenvalues_csv(const std::vector<EigenPair>& pairs) {
    std::ostringstream os;
    os << "index,value,residual,cluster\n";
    for (std::size_t i = 0; i < pairs.size(); ++i)
        os << i + 1 << ',' << format_double(pairs[i].value) << ','
           << format_double(pairs[i].residual) << ',' << pairs[i].cluster << '\n';
    return os.str();
}

namespace {

template <class T, class Fmt>
std::string grid_csv(const std::vector<T>& u, const Grid& g, Fmt fmt) {
    if (static_cast<int>(u.size()) != g.ncells())
        throw InvalidArgument("csv: field does not match the grid");
    std::ostringstream os;
    for (int j = 0; j < g.nt; ++j) {
        for (int i = 0; i < g.ntheta; ++i) {
            if (i) os << ',';
            os << fmt(u[g.index(i, j)]);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace

std::string field_csv(const std::vector<double>& u, const Grid& g) {
    return grid_csv(u, g, [](double v) { return format_double(v); });
}

std::string labels_csv(const std::vector<int>& labels, const Grid& g) {
    return grid_csv(labels, g, [](int v) { return std::to_string(v); });
}

std::string history_csv(const std::vector<SweepRecord>& history) {
    std::ostringstream os;
    os << "sweep,lambda_max,moved\n";
    for (std::size_t i = 0; i < history.size(); ++i)
        os << i << ',' << format_double(history[i].lambda_max) << ',' << history[i].moved << '\n';
    return os.str();
}

std::string graph_edges_text(const NeighborGraph& graph) {
    std::ostringstream os;
    for (const auto& e : graph.edges) os << e[0] << ' ' << e[1] << ' ' << e[2] << '\n';
    return os.str();
}

std::string labels_pgm(const std::vector<int>& labels, const Grid& g) {
    if (static_cast<int>(labels.size()) != g.ncells())
        throw InvalidArgument("pgm: label field does not match the grid");
    int k = 0;
    for (int l : labels) {
        if (l < 0) throw InvalidArgument("pgm: negative label");
        k = std::max(k, l + 1);
    }
    std::ostringstream os;
    os << "P2\n" << g.ntheta << ' ' << g.nt << "\n255\n";
    for (int j = g.nt - 1; j >= 0; --j) {
        for (int i = 0; i < g.ntheta; ++i) {
            if (i) os << ' ';
            int l = labels[g.index(i, j)];
            os << (k <= 1 ? 255 : l * 255 / (k - 1));
        }
        os << '\n';
    }
    return os.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::filesystem::path p(path);
    std::error_code ec;
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
    std::ofstream os(p, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os << content;
    os.flush();
    if (!os) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    std::ostringstream buf;
    buf << is.rdbuf();
    if (is.bad()) throw IoError("read failed: " + path);
    return buf.str();
}

ArtifactSink::ArtifactSink(std::string root) : root_(std::move(root)) {
    if (root_.empty()) throw InvalidArgument("artifact sink: empty output directory");
}

void ArtifactSink::write(const std::string& relpath, const std::string& content) {
    if (relpath.empty() || relpath.front() == '/')
        throw InvalidArgument("artifact sink: artifact paths must be relative");
    write_text_file((std::filesystem::path(root_) / relpath).string(), content);
    entries_.emplace_back(relpath, fnv1a64(content));
}

void ArtifactSink::write_manifest() const {
    auto sorted = entries_;
    std::sort(sorted.begin(), sorted.end());
    std::ostringstream os;
    for (const auto& [path, hash] : sorted) {
        char hex[17];
        std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
        os << "fnv1a64 " << hex << ' ' << path << '\n';
    }
    write_text_file((std::filesystem::path(root_) / "manifest.txt").string(), os.str());
}

std::vector<std::string> ArtifactSink::paths() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [path, hash] : entries_) out.push_back(path);
    return out;
}

} // namespace minpart
