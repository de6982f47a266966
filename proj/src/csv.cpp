#include "levyflux/csv.hpp"

#include <cstdio>

namespace levyflux {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) {
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    file_ = std::fopen(path.string().c_str(), "wb");
    require(file_ != nullptr, "cannot open '" + path.string() + "' for writing");
    raw_row(header);
}

CsvWriter::~CsvWriter() {
    if (file_) std::fclose(file_);
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    raw_row(cells);
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) std::fputc(',', file_);
        std::fputs(cells[i].c_str(), file_);
    }
    std::fputc('\n', file_);
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    CsvWriter w(path, {"time", "cell_index", "x", "rho"});
    for (const auto& [t, f] : traj.snapshots)
        for (int i = 0; i < f.size(); ++i)
            w.row({t, static_cast<double>(i), f.grid->cell_center(i), f[i]});
}

void write_diagnostics_csv(const std::filesystem::path& path, const Trajectory& traj) {
    CsvWriter w(path,
                {"time", "mass", "l1", "bv", "linf", "dt_used", "entropy_dissipation_sample"});
    for (const auto& d : traj.diagnostics)
        w.row({d.time, d.mass, d.l1, d.bv, d.linf, d.dt_used, d.entropy_dissipation_sample});
}

void write_field_csv(const std::filesystem::path& path, const Field& f) {
    CsvWriter w(path, {"cell_index", "x", "rho"});
    for (int i = 0; i < f.size(); ++i)
        w.row({static_cast<double>(i), f.grid->cell_center(i), f[i]});
}

void write_weights_csv(const std::filesystem::path& path, const FractionalOperator& op) {
    CsvWriter w(path, {"offset", "z", "weight"});
    for (size_t j = 0; j < op.weights.size(); ++j)
        w.row({static_cast<double>(j + 1), static_cast<double>(j + 1) * op.grid->spacing,
               op.weights[j]});
}

void write_xv_csv(const std::filesystem::path& path, const VGrid& vg,
                  const std::vector<double>& values) {
    CsvWriter w(path, {"i", "v", "value"});
    const size_t n = values.size() / static_cast<size_t>(vg.n_v);
    for (size_t i = 0; i < n; ++i)
        for (int c = 0; c < vg.n_v; ++c)
            w.row({static_cast<double>(i), vg.center(c),
                   values[i * static_cast<size_t>(vg.n_v) + c]});
}

} // namespace levyflux
