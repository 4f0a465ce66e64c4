// Reference parameter sets, their partner constructions, and the CSV/JSON
// serialization used by the command-line front end.

#include "pdmiso/presets.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace pdmiso::presets {

namespace {

model::ModelParams make_params(Complex a, Complex b, Complex c, Complex alpha,
                               Complex beta, double nu) {
    model::ModelParams mp;
    mp.a = a;
    mp.b = b;
    mp.c = c;
    mp.alpha = alpha;
    mp.beta = beta;
    mp.nu = nu;
    return mp;
}

std::vector<FigurePreset> build_presets() {
    std::vector<FigurePreset> v;
    {
        FigurePreset p;
        p.id = "fig1";
        p.params = make_params(5, 0, 3, 1, 0, 0);
        p.order = 1;
        p.deletion = true;
        p.note = "first-order deletion of the ground state E0 = 4.5";
        v.push_back(p);
    }
    {
        FigurePreset p;
        p.id = "fig2";
        p.params = make_params(3, 5, 4, 1, 0, 0);
        p.order = 1;
        p.note = "first-order strictly isospectral partner";
        v.push_back(p);
    }
    {
        FigurePreset p;
        p.id = "fig3";
        p.params = make_params(2.8, 20, 4.4, 1, 1, 0);
        p.order = 1;
        p.note = "first-order creation of the level mu = -13.32";
        v.push_back(p);
    }
    {
        FigurePreset p;
        p.id = "fig4";
        p.params = make_params(5, 0, 3, 1, 0, 0);
        p.order = 2;
        p.deletion = true;
        p.overlay_first_order = true;
        p.note = "second-order deletion of E0 = 4.5 and E1 = 10.5";
        v.push_back(p);
    }
    {
        FigurePreset p;
        p.id = "fig5";
        p.params = make_params(3, 5, 4, 1, 0, 0);
        p.order = 2;
        p.nu2 = 1.0;
        p.overlay_first_order = true;
        p.note = "second-order strictly isospectral partner";
        v.push_back(p);
    }
    {
        FigurePreset p;
        p.id = "fig6";
        p.params = make_params(2.8, 20, 4.4, 1, 1, 0);
        p.order = 2;
        p.nu2 = 7.2;
        p.nu2_alt = 10.0;  // same shifted pair up to the a<->b symmetry
        p.overlay_first_order = true;
        p.note = "second-order creation of mu1 = -13.32 and mu2 = -85.32";
        v.push_back(p);
    }
    {
        FigurePreset p;
        p.id = "fig7";
        p.params = make_params(Complex(6.1, -5.0), Complex(8.0, 5.0), 4.1, 1,
                               0, 0);
        p.order = 2;
        p.nu2 = 1.9;
        p.complex_pair = true;
        p.note = "complex conjugate pair mu = -51.25 +/- 9.5i, strictly "
                 "isospectral";
        v.push_back(p);
    }
    return v;
}

}  // namespace

const std::vector<FigurePreset>& figure_presets() {
    static const std::vector<FigurePreset> presets = build_presets();
    return presets;
}

const FigurePreset& figure_preset(const std::string& id) {
    for (const auto& p : figure_presets()) {
        if (p.id == id) return p;
    }
    throw DomainError("unknown figure preset: " + id);
}

intertwine1::FirstOrderPartner first_order_for(const FigurePreset& p) {
    if (p.deletion)
        return intertwine1::first_order_partner(
            model::bound_state_seed(p.params, 0));
    return intertwine1::first_order_partner(model::seed(p.params));
}

intertwine2::SecondOrderPartner second_order_for(const FigurePreset& p,
                                                 double nu2_override) {
    if (p.order < 2)
        throw DomainError("second_order_for: preset is first-order only");
    if (p.complex_pair) {
        model::ModelParams mp = p.params;
        return intertwine2::second_order_partner_conjugate(model::seed(mp));
    }
    if (p.deletion) {
        return intertwine2::second_order_partner(
            model::bound_state_seed(p.params, 0),
            model::bound_state_seed(p.params, 1));
    }
    const double nu2 = (nu2_override != 0.0) ? nu2_override : p.nu2;
    model::ModelParams second = p.params;
    second.nu = nu2;
    return intertwine2::second_order_partner(model::seed(p.params),
                                             model::seed(second));
}

FigureCurves figure_curves(const FigurePreset& p, int samples,
                           par::Exec exec) {
    FigureCurves c;
    c.x.resize(samples);
    c.v.resize(samples);
    c.vbar.resize(samples);
    std::vector<double> im(samples, 0.0);

    const bool second = p.order >= 2;
    const bool overlay = second && p.overlay_first_order;
    c.has_vbar2 = overlay;
    if (overlay) c.vbar2.resize(samples);

    // constructions are immutable after these calls; sampling is pure
    std::optional<intertwine1::FirstOrderPartner> first;
    std::optional<intertwine2::SecondOrderPartner> so;
    if (!second || overlay) first.emplace(first_order_for(p));
    if (second) so.emplace(second_order_for(p));

    par::parallel_for(samples, exec, [&](long i) {
        const double x =
            p.x_min + (p.x_max - p.x_min) * double(i) / (samples - 1);
        c.x[i] = x;
        c.v[i] = model::potential(p.params, x);
        if (!second) {
            const Complex vb = first->partner_potential_complex(x);
            c.vbar[i] = vb.real();
            im[i] = std::abs(vb.imag());
        } else {
            const Complex vb2 = so->partner_potential_complex(x);
            im[i] = std::abs(vb2.imag());
            if (overlay) {
                c.vbar[i] = first->partner_potential(x);
                c.vbar2[i] = vb2.real();
            } else {
                c.vbar[i] = vb2.real();
            }
        }
    });
    for (int i = 0; i < samples; ++i) {
        c.max_im_vbar = std::max(c.max_im_vbar, im[i]);
        c.max_abs_vbar = std::max(c.max_abs_vbar, std::abs(c.vbar[i]));
        if (c.has_vbar2)
            c.max_abs_vbar = std::max(c.max_abs_vbar, std::abs(c.vbar2[i]));
    }
    return c;
}

std::string figure_csv(const FigureCurves& c) {
    std::string out;
    out.reserve(c.x.size() * 64);
    out += c.has_vbar2 ? "x,V,Vbar,Vbar2\r\n" : "x,V,Vbar\r\n";
    char buf[128];
    for (std::size_t i = 0; i < c.x.size(); ++i) {
        if (c.has_vbar2) {
            std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e,%.12e\r\n",
                          c.x[i], c.v[i], c.vbar[i], c.vbar2[i]);
        } else {
            std::snprintf(buf, sizeof buf, "%.12e,%.12e,%.12e\r\n", c.x[i],
                          c.v[i], c.vbar[i]);
        }
        out += buf;
    }
    return out;
}

std::string format_complex(Complex z) {
    char buf[80];
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.12g", z.real());
    } else {
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    }
    return buf;
}

std::string figure_sidecar_json(const FigurePreset& p,
                                const FigureCurves& c) {
    std::ostringstream os;
    char buf[64];
    os << "{\"figure\":\"" << p.id << "\",";
    os << "\"params\":{\"a\":\"" << format_complex(p.params.a)
       << "\",\"b\":\"" << format_complex(p.params.b) << "\",\"c\":\""
       << format_complex(p.params.c) << "\",\"alpha\":\""
       << format_complex(p.params.alpha) << "\",\"beta\":\""
       << format_complex(p.params.beta) << "\",\"nu2\":" << p.nu2 << "},";
    os << "\"rows\":" << c.x.size() << ",";
    std::snprintf(buf, sizeof buf, "%.6e", c.max_im_vbar);
    os << "\"max_im_vbar\":" << buf << ",";
    std::snprintf(buf, sizeof buf, "%.6e", c.max_abs_vbar);
    os << "\"max_abs_vbar\":" << buf << ",";
    os << "\"pole_scan_pass\":" << (c.max_abs_vbar < 1e6 ? "true" : "false")
       << "}";
    return os.str();
}

Complex parse_complex(const std::string& text) {
    if (text.empty()) throw DomainError("empty complex literal");
    std::string s = text;
    const bool has_i = s.back() == 'i' || s.back() == 'I';
    if (!has_i) {
        try {
            std::size_t pos = 0;
            const double re = std::stod(s, &pos);
            if (pos != s.size())
                throw DomainError("bad complex literal: " + text);
            return Complex(re, 0.0);
        } catch (const std::invalid_argument&) {
            throw DomainError("bad complex literal: " + text);
        } catch (const std::out_of_range&) {
            throw DomainError("bad complex literal: " + text);
        }
    }
    s.pop_back();  // drop the i
    // find the sign separating real and imaginary parts (skip exponents
    // and a leading sign)
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    try {
        if (split == std::string::npos) {
            // pure imaginary, allow "i", "+i", "-i"
            if (s.empty() || s == "+" || s == "-")
                return Complex(0.0, s == "-" ? -1.0 : 1.0);
            std::size_t pos = 0;
            const double im = std::stod(s, &pos);
            if (pos != s.size())
                throw DomainError("bad complex literal: " + text);
            return Complex(0.0, im);
        }
        std::size_t pos = 0;
        const double re = std::stod(s.substr(0, split), &pos);
        if (pos != split) throw DomainError("bad complex literal: " + text);
        std::string imtext = s.substr(split);
        if (imtext == "+") imtext = "1";
        if (imtext == "-") imtext = "-1";
        const double im = std::stod(imtext, &pos);
        if (pos != imtext.size())
            throw DomainError("bad complex literal: " + text);
        return Complex(re, im);
    } catch (const std::invalid_argument&) {
        throw DomainError("bad complex literal: " + text);
    } catch (const std::out_of_range&) {
        throw DomainError("bad complex literal: " + text);
    }
}

}  // namespace pdmiso::presets
