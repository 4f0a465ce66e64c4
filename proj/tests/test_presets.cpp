#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pdmiso/presets.hpp"

using namespace pdmiso;
using namespace pdmiso::presets;

TEST_CASE("preset table carries the reference parameters") {
    CHECK(figure_presets().size() == 7);
    const auto& f1 = figure_preset("fig1");
    CHECK(f1.params.a == Complex(5, 0));
    CHECK(f1.params.b == Complex(0, 0));
    CHECK(f1.params.c == Complex(3, 0));
    const auto& f6 = figure_preset("fig6");
    CHECK(f6.nu2 == 7.2);
    CHECK(f6.nu2_alt == 10.0);
    const auto& f7 = figure_preset("fig7");
    CHECK(f7.params.a == Complex(6.1, -5.0));
    CHECK(f7.params.b == Complex(8.0, 5.0));
    CHECK(f7.nu2 == 1.9);
    CHECK_THROWS_AS((void)figure_preset("fig9"), DomainError);
}

TEST_CASE("figure 1 curves carry the expected point values") {
    const auto curves = figure_curves(figure_preset("fig1"), 801);
    // x = 0 is the midpoint sample
    const int mid = 400;
    CHECK(curves.x[mid] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(curves.v[mid] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(curves.vbar[mid] == doctest::Approx(6.5).epsilon(1e-12));
    CHECK(!curves.has_vbar2);
}

TEST_CASE("figure 2 base potential at the origin") {
    const auto curves = figure_curves(figure_preset("fig2"), 801);
    CHECK(curves.v[400] == doctest::Approx(5.75).epsilon(1e-12));
}

TEST_CASE("overlay figures provide both partner orders") {
    const auto curves = figure_curves(figure_preset("fig4"), 201);
    CHECK(curves.has_vbar2);
    CHECK(curves.vbar[100] == doctest::Approx(6.5).epsilon(1e-10));
    CHECK(curves.vbar2[100] == doctest::Approx(13.5).epsilon(1e-10));
}

TEST_CASE("CSV output is deterministic and RFC-4180 shaped") {
    const auto& p = figure_preset("fig2");
    const auto c1 = figure_curves(p, 101, par::Exec::Serial);
    const auto c2 = figure_curves(p, 101, par::Exec::Parallel);
    const std::string a = figure_csv(c1);
    const std::string b = figure_csv(c2);
    CHECK(a == b);
    CHECK(a.substr(0, 10) == "x,V,Vbar\r\n");
    // every row ends in CRLF and has two commas
    int rows = 0;
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i] == '\r' && a[i + 1] == '\n') ++rows;
    CHECK(rows == 102);  // header + 101 samples
}

TEST_CASE("pole scan: no partner potential blows up on its figure range") {
    for (const auto& p : figure_presets()) {
        const auto c = figure_curves(p, 401);
        INFO(p.id);
        CHECK(c.max_abs_vbar < 1e6);
        CHECK(std::isfinite(c.max_abs_vbar));
    }
}

TEST_CASE("figure 7 sidecar reports a negligible imaginary part") {
    const auto& p = figure_preset("fig7");
    const auto c = figure_curves(p, 801);
    CHECK(c.max_im_vbar <= 1e-10);
    const std::string json = figure_sidecar_json(p, c);
    CHECK(json.find("\"figure\":\"fig7\"") != std::string::npos);
    CHECK(json.find("\"pole_scan_pass\":true") != std::string::npos);
}

TEST_CASE("complex literal parsing") {
    CHECK(parse_complex("3") == Complex(3, 0));
    CHECK(parse_complex("-2.5") == Complex(-2.5, 0));
    CHECK(parse_complex("6.1-5i") == Complex(6.1, -5));
    CHECK(parse_complex("8+5i") == Complex(8, 5));
    CHECK(parse_complex("5i") == Complex(0, 5));
    CHECK(parse_complex("-i") == Complex(0, -1));
    CHECK(parse_complex("1e-3+2e-4i") == Complex(1e-3, 2e-4));
    CHECK_THROWS_AS((void)parse_complex(""), DomainError);
    CHECK_THROWS_AS((void)parse_complex("abc"), DomainError);
    CHECK_THROWS_AS((void)parse_complex("1+2"), DomainError);
}
