#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "xrego/errors.hpp"
#include "xrego/harness.hpp"

namespace xrego {

namespace {

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '&': o += "&amp;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
        }
    }
    return o;
}

std::string fmt(double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.2f", v);
    return b;
}

std::string base_variant(const std::string& algorithm) {
    const auto pos = algorithm.rfind(" rep");
    return pos == std::string::npos ? algorithm : algorithm.substr(0, pos);
}

}  // namespace

std::string render_svg(const std::vector<ProfileCurve>& curves) {
    std::map<std::string, std::vector<const ProfileCurve*>> panels;
    for (const auto& c : curves) panels[c.panel].push_back(&c);
    const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};
    std::map<std::string, std::string> colour;
    for (const auto& c : curves) {
        const auto v = base_variant(c.algorithm);
        if (!colour.count(v)) colour[v] = palette[colour.size() % 7];
    }
    const int pw = 420, ph = 300, ml = 50, mr = 130, mt = 30, mb = 40;
    const int cols = 2;
    const int rows = static_cast<int>((panels.size() + cols - 1) / cols);
    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << cols * pw << "\" height=\""
      << rows * ph << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    int idx = 0;
    for (const auto& [name, list] : panels) {
        const int ox = (idx % cols) * pw, oy = (idx / cols) * ph;
        ++idx;
        double amax = 1.0;
        for (const auto* c : list) amax = std::max(amax, c->points.back().alpha);
        const double lmax = std::max(std::log2(amax), 1.0);
        const double w = pw - ml - mr, h = ph - mt - mb;
        auto X = [&](double a) { return ox + ml + w * std::log2(std::max(a, 1.0)) / lmax; };
        auto Y = [&](double p) { return oy + mt + h * (1.0 - p); };
        s << "<g>\n<text x=\"" << ox + ml << "\" y=\"" << oy + 18 << "\" font-weight=\"bold\">"
          << xml_escape(name) << "</text>\n";
        s << "<rect x=\"" << ox + ml << "\" y=\"" << oy + mt << "\" width=\"" << w << "\" height=\"" << h
          << "\" fill=\"none\" stroke=\"#444\"/>\n";
        s << "<text x=\"" << ox + ml + w / 2 << "\" y=\"" << oy + ph - 8
          << "\" text-anchor=\"middle\">log2(alpha)</text>\n";
        for (int t = 0; t <= 4; ++t) {
            const double p = t / 4.0;
            s << "<text x=\"" << ox + ml - 6 << "\" y=\"" << fmt(Y(p) + 4)
              << "\" text-anchor=\"end\">" << fmt(p) << "</text>\n";
        }
        s << "<text x=\"" << fmt(X(amax)) << "\" y=\"" << oy + mt + h + 14
          << "\" text-anchor=\"end\">" << fmt(lmax) << "</text>\n";
        for (const auto* c : list) {
            s << "<path fill=\"none\" stroke-width=\"1.2\" stroke=\"" << colour[base_variant(c->algorithm)]
              << "\" d=\"M" << fmt(X(c->points[0].alpha)) << ' ' << fmt(Y(c->points[0].pi));
            for (std::size_t i = 1; i < c->points.size(); ++i)
                s << " H" << fmt(X(c->points[i].alpha)) << " V" << fmt(Y(c->points[i].pi));
            s << "\"><title>" << xml_escape(c->algorithm) << "</title></path>\n";
        }
        int ly = oy + mt + 10;
        std::map<std::string, bool> shown;
        for (const auto* c : list) {
            const auto v = base_variant(c->algorithm);
            if (shown[v]) continue;
            shown[v] = true;
            s << "<line x1=\"" << ox + pw - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << ox + pw - mr + 30
              << "\" y2=\"" << ly << "\" stroke=\"" << colour[v] << "\" stroke-width=\"2\"/>\n";
            s << "<text x=\"" << ox + pw - mr + 34 << "\" y=\"" << ly + 4 << "\">" << xml_escape(v)
              << "</text>\n";
            ly += 16;
        }
        s << "</g>\n";
    }
    s << "</svg>\n";
    return s.str();
}

void emit(const std::vector<ResultRow>& rows, const std::vector<ProfileCurve>& curves,
          const std::string& out_dir) {
    namespace fs = std::filesystem;
    if (curves.empty()) throw InvalidArgument("emit: no profile curves to write");
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

    std::map<std::string, std::string> files;
    {
        std::ostringstream s;
        write_results_csv(s, rows);
        files["results.csv"] = s.str();
    }
    {
        std::ostringstream s;
        s << "panel,algorithm,alpha,pi\n";
        for (const auto& c : curves)
            for (const auto& p : c.points)
                s << c.panel << ',' << c.algorithm << ',' << format_real(p.alpha) << ','
                  << format_real(p.pi) << '\n';
        files["profiles.csv"] = s.str();
    }
    files["profiles.svg"] = render_svg(curves);
    {
        std::ostringstream s;
        s << "family,D,variant,solver,cells,solved,median_evals\n";
        for (const auto& m : medians(summarize(rows)))
            s << m.family << ',' << m.D << ',' << m.variant << ',' << m.solver << ',' << m.cells << ','
              << m.solved << ',' << format_real(m.median_evals) << '\n';
        files["medians.csv"] = s.str();
    }

    std::vector<fs::path> staged;
    auto cleanup = [&] {
        for (const auto& p : staged) fs::remove(p, ec);
    };
    for (const auto& [name, text] : files) {
        const fs::path tmp = fs::path(out_dir) / ("." + name + ".tmp");
        std::ofstream f(tmp, std::ios::binary);
        if (f) {
            staged.push_back(tmp);
            f << text;
            f.close();
        }
        if (!f) {
            cleanup();
            throw IoError("cannot write " + tmp.string());
        }
    }
    for (const auto& [name, text] : files) {
        fs::rename(fs::path(out_dir) / ("." + name + ".tmp"), fs::path(out_dir) / name, ec);
        if (ec) {
            cleanup();
            throw IoError("cannot move " + name + " into " + out_dir + ": " + ec.message());
        }
    }
}

}  // namespace xrego
