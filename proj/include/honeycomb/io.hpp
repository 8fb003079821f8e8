#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "honeycomb/dispersive.hpp"
#include "honeycomb/flatband.hpp"
#include "honeycomb/version.hpp"

namespace honeycomb {

// Fixed number formatting: 17 significant digits, '.' separator, so repeated
// runs produce byte-identical files.
inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt(int x) { return std::to_string(x); }

inline std::string termination_name(const EdgeConfig& cfg) {
    if (cfg.nAmin == cfg.nBmin) return "balanced";
    return cfg.nBmin > cfg.nAmin ? "unbalanced-a" : "unbalanced-b";
}

inline std::string kind_name(EdgeKind k) {
    switch (k) {
    case EdgeKind::ZigzagType: return "zigzag";
    case EdgeKind::ArmchairType: return "armchair";
    case EdgeKind::ClassicalZigzag: return "classical-zigzag";
    }
    return "?";
}

inline std::string site_name(Site s) {
    switch (s) {
    case Site::A: return "A";
    case Site::B: return "B";
    case Site::None: return "none";
    }
    return "?";
}

inline std::string interval_name(KInterval i) {
    switch (i) {
    case KInterval::Inner: return "(2pi/3,4pi/3)";
    case KInterval::Outer: return "[0,2pi]\\[2pi/3,4pi/3]";
    case KInterval::Empty: return "empty";
    }
    return "?";
}

// Comment-style metadata block shared by all text outputs.
inline std::string metadata_comment(const EdgeConfig& cfg, const std::string& extra) {
    std::ostringstream os;
    os << "# honeycomb-edge " << version << "\n";
    os << "# edge: " << cfg.a11 << " " << cfg.a12 << "\n";
    os << "# gauge: " << cfg.a21 << " " << cfg.a22 << "\n";
    os << "# termination: " << termination_name(cfg) << "\n";
    if (!extra.empty()) os << "# " << extra << "\n";
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file: " + path);
    f << body;
}

inline std::string json_error(const std::string& code, const std::string& message) {
    std::ostringstream os;
    os << "{\"error\":\"" << code << "\",\"message\":\"";
    for (char c : message) {
        if (c == '"' || c == '\\') os << '\\';
        os << c;
    }
    os << "\"}";
    return os.str();
}

inline std::string classify_report(const EdgeConfig& cfg) {
    const EdgeClass cls = classify(cfg);
    const NeighborOffsets off = bloch_offsets(cfg);
    const GapClosings gaps = gap_closing_quasimomenta(cfg);
    // Probe one interior momentum of the flat-band interval (if any) to
    // report which sublattice carries the states.
    const FlatBandVerdict inner = verdict(cls, cfg, pi);
    const FlatBandVerdict probe = inner.exists ? inner : verdict(cls, cfg, 0.3);

    std::ostringstream os;
    os << "{\n";
    os << "  \"tool\": \"honeycomb-edge\",\n  \"version\": \"" << version << "\",\n";
    os << "  \"edge\": [" << cfg.a11 << ", " << cfg.a12 << "],\n";
    os << "  \"gauge\": [" << cfg.a21 << ", " << cfg.a22 << "],\n";
    os << "  \"s1\": " << cfg.s1 << ",\n  \"s2\": " << cfg.s2 << ",\n";
    os << "  \"nAmin\": " << cfg.nAmin << ",\n  \"nBmin\": " << cfg.nBmin << ",\n";
    os << "  \"kind\": \"" << kind_name(cls.kind) << "\",\n";
    os << "  \"balance\": \""
       << (cls.balance == Balance::Balanced ? "balanced" : "unbalanced") << "\",\n";
    os << "  \"dB_minus_dA\": " << fmt(cls.dBminusDA) << ",\n";
    os << "  \"offsets\": {\"m\": [" << off.m[0] << ", " << off.m[1] << ", "
       << off.m[2] << "], \"n\": [" << off.n[0] << ", " << off.n[1] << ", "
       << off.n[2] << "]},\n";
    os << "  \"gap_closing_k\": [";
    for (std::size_t i = 0; i < gaps.k.size(); ++i)
        os << (i ? ", " : "") << fmt(gaps.k[i]);
    os << "],\n  \"gap_closing_kperp\": [";
    for (std::size_t i = 0; i < gaps.kperp.size(); ++i)
        os << (i ? ", " : "") << fmt(gaps.kperp[i]);
    os << "],\n";
    os << "  \"wedge_slope\": " << fmt(wedge_slope(cfg)) << ",\n";
    os << "  \"flat_band\": {\"interval\": \"" << interval_name(probe.kInterval)
       << "\", \"sublattice\": \"" << site_name(probe.sublattice) << "\"}\n";
    os << "}\n";
    return os.str();
}

inline std::string spectrum_csv(const EdgeConfig& cfg,
                                const std::vector<SpectrumSlice>& slices, int nKperp) {
    std::ostringstream os;
    os << metadata_comment(cfg, "columns: k,band_min,band_max,gapped; nk=" +
                                     std::to_string(slices.empty() ? 0 : slices.size() - 1) +
                                     " nkperp=" + std::to_string(nKperp));
    os << "k,band_min,band_max,gapped\n";
    for (const SpectrumSlice& s : slices)
        os << fmt(s.k) << "," << fmt(s.bandMin) << "," << fmt(s.bandMax) << ","
           << (s.gapped ? 1 : 0) << "\n";
    return os.str();
}

inline std::string flatband_json(const EdgeConfig& cfg, const FlatBandState& st,
                                 double residual) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"tool\": \"honeycomb-edge\",\n  \"version\": \"" << version << "\",\n";
    os << "  \"edge\": [" << cfg.a11 << ", " << cfg.a12 << "],\n";
    os << "  \"gauge\": [" << cfg.a21 << ", " << cfg.a22 << "],\n";
    os << "  \"termination\": \"" << termination_name(cfg) << "\",\n";
    os << "  \"k\": " << fmt(st.k) << ",\n";
    os << "  \"sublattice\": \"" << site_name(st.sublattice) << "\",\n";
    os << "  \"base_index\": " << st.baseIndex << ",\n";
    os << "  \"norm\": " << fmt(st.norm) << ",\n";
    os << "  \"residual\": " << fmt(residual) << ",\n";
    os << "  \"slow_decay\": " << (st.slowDecay ? "true" : "false") << ",\n";
    os << "  \"amplitudes\": [";
    for (std::size_t i = 0; i < st.amplitudes.size(); ++i) {
        os << (i ? ", " : "") << "[" << fmt(st.amplitudes[i].real()) << ", "
           << fmt(st.amplitudes[i].imag()) << "]";
    }
    os << "]\n}\n";
    return os.str();
}

// Matrix CSV: row = fixed k, column = fixed E. The header row carries the E
// values, the first column the k values. Masked cells print as nan.
inline std::string scan_csv(const EdgeConfig& cfg, const DeltaGrid& grid) {
    std::ostringstream os;
    os << metadata_comment(cfg, "log|Delta| matrix; rows: k, columns: E; nk=" +
                                     std::to_string(grid.kValues.size() - 1) +
                                     " ne=" + std::to_string(grid.eValues.size() - 1));
    os << "k\\E";
    for (double e : grid.eValues) os << "," << fmt(e);
    os << "\n";
    for (std::size_t ik = 0; ik < grid.kValues.size(); ++ik) {
        os << fmt(grid.kValues[ik]);
        for (std::size_t ie = 0; ie < grid.eValues.size(); ++ie) {
            double v = grid.logAbsDelta[grid.index(ik, ie)];
            os << "," << (std::isfinite(v) ? fmt(v) : std::string("nan"));
        }
        os << "\n";
    }
    return os.str();
}

// 8-bit binary PGM of min-max normalized log|Delta|; masked cells are white.
inline std::string scan_pgm(const EdgeConfig& cfg, const DeltaGrid& grid) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : grid.logAbsDelta)
        if (std::isfinite(v)) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!(hi > lo)) { lo = 0.0; hi = 1.0; }

    std::ostringstream os;
    os << "P5\n";
    for (const std::string& line :
         {std::string("honeycomb-edge ") + version,
          "edge: " + std::to_string(cfg.a11) + " " + std::to_string(cfg.a12),
          "gauge: " + std::to_string(cfg.a21) + " " + std::to_string(cfg.a22)})
        os << "# " << line << "\n";
    os << grid.eValues.size() << " " << grid.kValues.size() << "\n255\n";
    for (std::size_t ik = 0; ik < grid.kValues.size(); ++ik)
        for (std::size_t ie = 0; ie < grid.eValues.size(); ++ie) {
            double v = grid.logAbsDelta[grid.index(ik, ie)];
            unsigned char byte = 255;
            if (std::isfinite(v))
                byte = (unsigned char)std::lround(255.0 * (v - lo) / (hi - lo));
            os.put(char(byte));
        }
    return os.str();
}

inline std::string winding_json(const EdgeConfig& cfg, const WindingResult& w) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"tool\": \"honeycomb-edge\",\n  \"version\": \"" << version << "\",\n";
    os << "  \"edge\": [" << cfg.a11 << ", " << cfg.a12 << "],\n";
    os << "  \"gauge\": [" << cfg.a21 << ", " << cfg.a22 << "],\n";
    os << "  \"k0\": " << fmt(w.k0) << ",\n";
    os << "  \"E0\": [" << fmt(w.E0.real()) << ", " << fmt(w.E0.imag()) << "],\n";
    os << "  \"rE\": " << fmt(w.radius) << ",\n";
    os << "  \"Nc\": " << w.samples << ",\n";
    os << "  \"W\": " << w.winding << ",\n";
    os << "  \"minAbsDelta\": " << fmt(w.minAbsDelta) << "\n";
    os << "}\n";
    return os.str();
}

inline std::string wedge_json(const EdgeConfig& cfg) {
    const GapClosings gaps = gap_closing_quasimomenta(cfg);
    std::ostringstream os;
    os << "{\n";
    os << "  \"tool\": \"honeycomb-edge\",\n  \"version\": \"" << version << "\",\n";
    os << "  \"edge\": [" << cfg.a11 << ", " << cfg.a12 << "],\n";
    os << "  \"wedge_slope\": " << fmt(wedge_slope(cfg)) << ",\n";
    os << "  \"gap_closing_k\": [";
    for (std::size_t i = 0; i < gaps.k.size(); ++i)
        os << (i ? ", " : "") << fmt(gaps.k[i]);
    os << "]\n}\n";
    return os.str();
}

} // namespace honeycomb
