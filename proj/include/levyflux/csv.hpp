#pragma once
#include <filesystem>
#include <string>
#include <vector>

#include "levyflux/kinetic.hpp"
#include "levyflux/solver.hpp"

namespace levyflux {

/// Minimal RFC-4180-style writer: comma separated, LF line endings, fixed
/// "%.17g" number formatting so identical runs produce identical bytes.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    ~CsvWriter();
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);

private:
    FILE* file_ = nullptr;
};

std::string format_double(double v);

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
void write_diagnostics_csv(const std::filesystem::path& path, const Trajectory& traj);
void write_field_csv(const std::filesystem::path& path, const Field& f);
void write_weights_csv(const std::filesystem::path& path, const FractionalOperator& op);

/// (i, v, value) triples for any N x n_v array on a (grid, vgrid) product.
void write_xv_csv(const std::filesystem::path& path, const VGrid& vg,
                  const std::vector<double>& values);

} // namespace levyflux
