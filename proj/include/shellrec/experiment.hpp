#ifndef SHELLREC_EXPERIMENT_HPP
#define SHELLREC_EXPERIMENT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shellrec/analysis.hpp"

namespace shellrec {

// Flat key-value experiment configuration: one `key = value` per line,
// `#` starts a comment, lists are comma- or space-separated. Unknown keys
// are rejected (with the offending line) to catch typos early.
class ExperimentConfig {
public:
    static ExperimentConfig parse_file(const std::string& path);
    static ExperimentConfig parse_string(const std::string& text,
                                         const std::string& origin = "<string>");

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_list(const std::string& key) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;

    void override_value(const std::string& key, const std::string& value);

private:
    struct Entry {
        std::string value;
        int line;
    };
    std::map<std::string, Entry> entries_;
    std::string origin_;
    [[noreturn]] void fail(const std::string& key, const std::string& what) const;
};

// Shared experiment assembly: dimension, dispersion, initial data, study
// options. Used by the converge/bench/reconstruct subcommands.
struct ExperimentSetup {
    int dim;
    DispersionSpec b;
    double rho;
    double tau;
    std::vector<double> epsilons;
    std::vector<std::array<double, 3>> k_points;
    FourierField u0hat;
    StudyOptions study;
};
ExperimentSetup build_setup(const ExperimentConfig& cfg);

// Tabulated initial data: CSV rows `k_1,...,k_d,re,im` on a uniform tensor
// grid; off-grid queries interpolate (spectral module policy).
FourierField load_tabulated_field(const std::string& path, int dim);

// Subcommand drivers; each writes one CSV file and returns the row count.
// CSV schemas (headers are exact and stable):
//   converge:         d,b_kind,rho,tau,epsilon,k_norm,abs_error,a_term_re,a_term_im,g_abs,wall_ms
//   stationary-phase: d,N,re,im,abs_error_vs_phi_kappa,nodes
//   fresnel:          beta,N,re,im,abs_error
//   bench:            epsilon,recon_wall_ms,recon_peak_mem_est,grid_cells_required
//   reconstruct:      x_coord,re,im
int run_converge(const ExperimentConfig& cfg, const std::string& out_path);
int run_stationary_phase(const ExperimentConfig& cfg, const std::string& out_path);
int run_fresnel(const ExperimentConfig& cfg, const std::string& out_path);
int run_bench(const ExperimentConfig& cfg, const std::string& out_path);
int run_reconstruct(const ExperimentConfig& cfg, const std::string& out_path);

// Full-precision (17 significant digits) numeric formatting used in all CSVs.
std::string fmt17(double v);

} // namespace shellrec

#endif
