#include "levelcurv/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace levelcurv {

namespace {

[[noreturn]] void invalid(const std::string& what)
{
    throw std::invalid_argument("spectrum: " + what);
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

// parse "k1:w1,k2:w2,..." pairs
void parse_pairs(const std::string& text, std::vector<double>& ks, std::vector<double>& ws)
{
    std::stringstream ss(text);
    std::string item;
    while(std::getline(ss, item, ',')) {
        item = trim(item);
        if(item.empty())
            continue;
        auto colon = item.find(':');
        if(colon == std::string::npos)
            invalid("expected k:w pair, got '" + item + "'");
        ks.push_back(std::stod(item.substr(0, colon)));
        ws.push_back(std::stod(item.substr(colon + 1)));
    }
}

}  // namespace

SpectrumModel SpectrumModel::monochromatic_shell(double k0, double field_variance)
{
    SpectrumModel s;
    s.kind = SpectrumKind::monochromatic;
    s.k = {k0};
    s.w = {1.0};
    s.field_variance = field_variance;
    s.validate();
    return s;
}

SpectrumModel SpectrumModel::shell_mixture(std::vector<double> wavenumbers,
                                           std::vector<double> weights, double field_variance)
{
    SpectrumModel s;
    s.kind = SpectrumKind::shells;
    s.k = std::move(wavenumbers);
    s.w = std::move(weights);
    s.field_variance = field_variance;
    s.validate();
    return s;
}

SpectrumModel SpectrumModel::solid_ball(double kmax, double field_variance)
{
    SpectrumModel s;
    s.kind = SpectrumKind::ball;
    s.kmax = kmax;
    s.field_variance = field_variance;
    s.validate();
    return s;
}

SpectrumModel SpectrumModel::tabulated(std::vector<double> wavenumbers,
                                       std::vector<double> density, double field_variance)
{
    SpectrumModel s;
    s.kind = SpectrumKind::tabulated;
    s.k = std::move(wavenumbers);
    s.w = std::move(density);
    s.field_variance = field_variance;
    s.validate();
    return s;
}

void SpectrumModel::validate() const
{
    if(!(field_variance > 0))
        invalid("field_variance must be > 0");
    switch(kind) {
        case SpectrumKind::monochromatic:
            if(k.size() != 1 || !(k[0] > 0))
                invalid("monochromatic shell needs one wavenumber > 0");
            break;
        case SpectrumKind::shells: {
            if(k.empty() || k.size() != w.size())
                invalid("shell mixture needs matching wavenumber/weight lists");
            double total = 0;
            for(std::size_t i = 0; i < k.size(); i++) {
                if(!(k[i] > 0))
                    invalid("all wavenumbers must be > 0");
                if(w[i] < 0)
                    invalid("weights must be >= 0");
                total += w[i];
            }
            if(!(total > 0))
                invalid("zero total weight");
            break;
        }
        case SpectrumKind::ball:
            if(!(kmax > 0))
                invalid("ball radius must be > 0");
            break;
        case SpectrumKind::tabulated: {
            if(k.size() < 2 || k.size() != w.size())
                invalid("table needs >= 2 (k, density) rows");
            double total = 0;
            for(std::size_t i = 0; i < k.size(); i++) {
                if(!(k[i] > 0))
                    invalid("all wavenumbers must be > 0");
                if(i > 0 && !(k[i] > k[i - 1]))
                    invalid("table wavenumbers must be strictly increasing");
                if(w[i] < 0)
                    invalid("density must be >= 0");
                total += w[i];
            }
            if(!(total > 0))
                invalid("zero total weight");
            break;
        }
    }
}

double SpectrumModel::max_wavenumber() const
{
    switch(kind) {
        case SpectrumKind::monochromatic:
            return k[0];
        case SpectrumKind::shells: {
            double m = 0;
            for(std::size_t i = 0; i < k.size(); i++)
                if(w[i] > 0)
                    m = std::max(m, k[i]);
            return m;
        }
        case SpectrumKind::ball:
            return kmax;
        case SpectrumKind::tabulated: {
            for(std::size_t i = k.size(); i-- > 0;)
                if(w[i] > 0)
                    return k[i];
            return k.back();
        }
    }
    return 0;
}

std::string SpectrumModel::describe() const
{
    char buf[64];
    switch(kind) {
        case SpectrumKind::monochromatic:
            std::snprintf(buf, sizeof buf, "mono:%g", k[0]);
            return buf;
        case SpectrumKind::shells: {
            std::string s = "shells:";
            for(std::size_t i = 0; i < k.size(); i++) {
                std::snprintf(buf, sizeof buf, "%s%g:%g", i ? "," : "", k[i], w[i]);
                s += buf;
            }
            return s;
        }
        case SpectrumKind::ball:
            std::snprintf(buf, sizeof buf, "ball:%g", kmax);
            return buf;
        case SpectrumKind::tabulated:
            std::snprintf(buf, sizeof buf, "table[%zu]", k.size());
            return buf;
    }
    return "?";
}

SpectralMoments SpectralMoments::from_bars(double k2bar, double k4bar, double field_variance)
{
    if(!(k2bar > 0) || !(k4bar > 0))
        invalid("k2bar and k4bar must be > 0");
    SpectralMoments m;
    m.field_variance = field_variance;
    m.k2bar = k2bar;
    m.k4bar = k4bar;
    m.rho = k2bar * k2bar / k4bar;
    if(m.rho > 1.0 + 1e-12)
        invalid("rho = (k2bar)^2/k4bar exceeds 1 (not realizable)");
    return m;
}

SpectralMoments moments(const SpectrumModel& spectrum)
{
    spectrum.validate();
    double k2 = 0, k4 = 0;
    switch(spectrum.kind) {
        case SpectrumKind::monochromatic: {
            const double k0 = spectrum.k[0];
            k2 = k0 * k0;
            k4 = k2 * k2;
            break;
        }
        case SpectrumKind::shells: {
            double total = 0;
            for(std::size_t i = 0; i < spectrum.k.size(); i++) {
                const double kk = spectrum.k[i] * spectrum.k[i];
                total += spectrum.w[i];
                k2 += spectrum.w[i] * kk;
                k4 += spectrum.w[i] * kk * kk;
            }
            k2 /= total;
            k4 /= total;
            break;
        }
        case SpectrumKind::ball:
            // radial density ~ k^2 dk:  int k^4 / int k^2 and int k^6 / int k^2
            k2 = 3.0 / 5.0 * spectrum.kmax * spectrum.kmax;
            k4 = 3.0 / 7.0 * std::pow(spectrum.kmax, 4);
            break;
        case SpectrumKind::tabulated: {
            // composite trapezoid over the (linearly interpolated) table,
            // refined to at least 256 nodes; relative accuracy is the
            // trapezoid O(h^2) of the refined table, typically ~1e-6.
            const auto& kt = spectrum.k;
            const auto& wt = spectrum.w;
            std::size_t per_cell = 1;
            while((kt.size() - 1) * per_cell + 1 < 256)
                per_cell *= 2;
            double total = 0;
            double prev_k = 0, prev_w0 = 0, prev_w2 = 0, prev_w4 = 0;
            bool have_prev = false;
            for(std::size_t i = 0; i + 1 < kt.size(); i++) {
                for(std::size_t j = (i == 0 ? 0 : 1); j <= per_cell; j++) {
                    const double t = static_cast<double>(j) / static_cast<double>(per_cell);
                    const double kk = kt[i] + t * (kt[i + 1] - kt[i]);
                    const double ww = wt[i] + t * (wt[i + 1] - wt[i]);
                    const double k2v = kk * kk;
                    if(have_prev) {
                        const double h = kk - prev_k;
                        total += 0.5 * h * (prev_w0 + ww);
                        k2 += 0.5 * h * (prev_w2 + ww * k2v);
                        k4 += 0.5 * h * (prev_w4 + ww * k2v * k2v);
                    }
                    prev_k = kk;
                    prev_w0 = ww;
                    prev_w2 = ww * k2v;
                    prev_w4 = ww * k2v * k2v;
                    have_prev = true;
                }
            }
            if(!(total > 0))
                invalid("zero total weight");
            k2 /= total;
            k4 /= total;
            break;
        }
    }
    return SpectralMoments::from_bars(k2, k4, spectrum.field_variance);
}

PairDerivativeMoments pair_derivative_moments(const SpectralMoments& m)
{
    PairDerivativeMoments p;
    p.f2 = m.field_variance;
    p.fx2 = m.field_variance * m.k2bar / 3.0;
    p.fxx2 = m.field_variance * m.k4bar / 5.0;
    p.fxxfyy = m.field_variance * m.k4bar / 15.0;
    p.ffxx = -p.fx2;
    return p;
}

double radial_quantile(const SpectrumModel& spectrum, double u)
{
    u = std::min(std::max(u, 0.0), 1.0);
    switch(spectrum.kind) {
        case SpectrumKind::monochromatic:
            return spectrum.k[0];
        case SpectrumKind::shells: {
            double total = 0;
            for(double wi : spectrum.w)
                total += wi;
            double acc = 0;
            for(std::size_t i = 0; i < spectrum.k.size(); i++) {
                acc += spectrum.w[i] / total;
                if(u < acc || i + 1 == spectrum.k.size())
                    return spectrum.k[i];
            }
            return spectrum.k.back();
        }
        case SpectrumKind::ball:
            return spectrum.kmax * std::cbrt(u);
        case SpectrumKind::tabulated: {
            // piecewise-linear density: CDF is piecewise quadratic
            const auto& kt = spectrum.k;
            const auto& wt = spectrum.w;
            double total = 0;
            for(std::size_t i = 0; i + 1 < kt.size(); i++)
                total += 0.5 * (kt[i + 1] - kt[i]) * (wt[i] + wt[i + 1]);
            double target = u * total;
            for(std::size_t i = 0; i + 1 < kt.size(); i++) {
                const double h = kt[i + 1] - kt[i];
                const double cell = 0.5 * h * (wt[i] + wt[i + 1]);
                if(target > cell && i + 2 < kt.size()) {
                    target -= cell;
                    continue;
                }
                // solve 0.5*slope*t^2 + w0*t = target on [0, h]
                const double slope = (wt[i + 1] - wt[i]) / h;
                double t;
                if(std::fabs(slope) < 1e-300) {
                    t = wt[i] > 0 ? target / wt[i] : 0.0;
                } else {
                    const double disc = wt[i] * wt[i] + 2.0 * slope * target;
                    t = (std::sqrt(std::max(disc, 0.0)) - wt[i]) / slope;
                }
                return kt[i] + std::min(std::max(t, 0.0), h);
            }
            return kt.back();
        }
    }
    return 0;
}

SpectrumModel parse_spectrum(const std::string& text)
{
    auto starts = [&text](const char* p) { return text.rfind(p, 0) == 0; };
    if(starts("mono:"))
        return SpectrumModel::monochromatic_shell(std::stod(text.substr(5)));
    if(starts("ball:"))
        return SpectrumModel::solid_ball(std::stod(text.substr(5)));
    if(starts("shells:")) {
        std::vector<double> ks, ws;
        parse_pairs(text.substr(7), ks, ws);
        return SpectrumModel::shell_mixture(std::move(ks), std::move(ws));
    }

    std::ifstream in(text);
    if(!in)
        invalid("cannot open spectrum file '" + text + "'");
    SpectrumModel s;
    std::string variant;
    double field_variance = 1.0;
    std::vector<double> ks, ws;
    double k0 = 0, kmax = 0;
    std::string line;
    while(std::getline(in, line)) {
        line = trim(line);
        if(line.empty() || line[0] == '#')
            continue;
        auto eq = line.find('=');
        if(eq == std::string::npos)
            invalid("expected key = value in spectrum file: '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if(key == "variant")
            variant = val;
        else if(key == "field_variance")
            field_variance = std::stod(val);
        else if(key == "k0")
            k0 = std::stod(val);
        else if(key == "kmax")
            kmax = std::stod(val);
        else if(key == "shells" || key == "table")
            parse_pairs(val, ks, ws);
        else
            invalid("unknown key '" + key + "' in spectrum file");
    }
    if(variant == "monochromatic" || variant == "mono")
        return SpectrumModel::monochromatic_shell(k0, field_variance);
    if(variant == "shells")
        return SpectrumModel::shell_mixture(std::move(ks), std::move(ws), field_variance);
    if(variant == "ball")
        return SpectrumModel::solid_ball(kmax, field_variance);
    if(variant == "tabulated" || variant == "table")
        return SpectrumModel::tabulated(std::move(ks), std::move(ws), field_variance);
    invalid("unknown or missing variant '" + variant + "'");
}

void write_spectrum_file(const SpectrumModel& spectrum, const std::string& path)
{
    std::ofstream out(path);
    if(!out)
        invalid("cannot write spectrum file '" + path + "'");
    char buf[64];
    switch(spectrum.kind) {
        case SpectrumKind::monochromatic:
            out << "variant = monochromatic\n";
            std::snprintf(buf, sizeof buf, "k0 = %.17g\n", spectrum.k[0]);
            out << buf;
            break;
        case SpectrumKind::shells: {
            out << "variant = shells\nshells = ";
            for(std::size_t i = 0; i < spectrum.k.size(); i++) {
                std::snprintf(buf, sizeof buf, "%s%.17g:%.17g", i ? "," : "", spectrum.k[i],
                              spectrum.w[i]);
                out << buf;
            }
            out << "\n";
            break;
        }
        case SpectrumKind::ball:
            out << "variant = ball\n";
            std::snprintf(buf, sizeof buf, "kmax = %.17g\n", spectrum.kmax);
            out << buf;
            break;
        case SpectrumKind::tabulated: {
            out << "variant = tabulated\ntable = ";
            for(std::size_t i = 0; i < spectrum.k.size(); i++) {
                std::snprintf(buf, sizeof buf, "%s%.17g:%.17g", i ? "," : "", spectrum.k[i],
                              spectrum.w[i]);
                out << buf;
            }
            out << "\n";
            break;
        }
    }
    char fv[64];
    std::snprintf(fv, sizeof fv, "field_variance = %.17g\n", spectrum.field_variance);
    out << fv;
}

}  // namespace levelcurv
