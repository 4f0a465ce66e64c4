#ifndef PDMISO_PRESETS_HPP
#define PDMISO_PRESETS_HPP

#include <string>
#include <vector>

#include "pdmiso/intertwine1.hpp"
#include "pdmiso/intertwine2.hpp"

namespace pdmiso::presets {

using pdmiso::Complex;

// Named parameter sets for the seven reference figures.  Figures 4-6
// overlay the first- and second-order partners of the same base system.
struct FigurePreset {
    std::string id;
    model::ModelParams params;  // base system (weights of the first seed)
    int order = 1;              // highest transform order shown
    double nu2 = 0.0;           // shift of the second seed (order 2)
    double nu2_alt = 0.0;       // documented alternative shift (fig6)
    bool deletion = false;      // seeds are the lowest bound states
    bool complex_pair = false;  // conjugate factorization energies
    bool overlay_first_order = false;
    double x_min = -5.0;
    double x_max = 5.0;
    std::string note;
};

const std::vector<FigurePreset>& figure_presets();
const FigurePreset& figure_preset(const std::string& id);

// Constructions behind a preset.
intertwine1::FirstOrderPartner first_order_for(const FigurePreset& p);
intertwine2::SecondOrderPartner second_order_for(const FigurePreset& p,
                                                 double nu2_override = 0.0);

// Sampled curves: x, V, Vbar (+ Vbar2 for the overlay figures), with the
// reality and pole diagnostics the sidecar reports.
struct FigureCurves {
    std::vector<double> x, v, vbar, vbar2;
    bool has_vbar2 = false;
    double max_im_vbar = 0.0;
    double max_abs_vbar = 0.0;
};

FigureCurves figure_curves(const FigurePreset& p, int samples = 801,
                           par::Exec exec = par::default_exec());

// RFC-4180 CSV (CRLF line endings, header row, %.12e fields).
std::string figure_csv(const FigureCurves& c);

// One-line JSON summary written next to the CSV.
std::string figure_sidecar_json(const FigurePreset& p, const FigureCurves& c);

// Complex literal of the form RE, IMi, or RE+IMi / RE-IMi (e.g. "6.1-5i").
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

}  // namespace pdmiso::presets

#endif
