/*
 * Copyright 2026 the xfl authors
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#include "core/touchstone.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "core/error.hpp"
#include "core/numfmt.hpp"

namespace xfl {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw Error(errc::parse, "line " + std::to_string(line) + ": " + msg);
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
}

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream iss(line);
    std::string t;
    while (iss >> t)
        toks.push_back(t);
    return toks;
}

double parse_double(const std::string& tok, int line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &pos);
    } catch (const std::exception&) {
        fail(line, "expected a number, got '" + tok + "'");
    }
    if (pos != tok.size())
        fail(line, "trailing characters in number '" + tok + "'");
    return v;
}

} // namespace

void validate(const AdmittanceRecord& rec) {
    if (rec.f_ghz.size() != rec.y_s.size())
        throw Error(errc::invalid_argument, "admittance record arrays have mismatched lengths");
    for (std::size_t i = 1; i < rec.f_ghz.size(); ++i)
        if (!(rec.f_ghz[i] > rec.f_ghz[i - 1]))
            throw Error(errc::invalid_argument, "admittance record frequencies must ascend");
}

Touchstone parse_touchstone(std::istream& in, int expected_ports) {
    if (expected_ports != 1 && expected_ports != 2)
        throw Error(errc::invalid_argument, "only one- and two-port files are supported");

    Touchstone ts;
    ts.n_ports = expected_ports;
    double unit_to_ghz = 1.0; // Touchstone default unit is GHz
    bool ma_format = true;    // Touchstone default format is MA
    bool saw_options = false;

    const std::size_t values_per_row = expected_ports == 1 ? 3 : 9;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        if (auto bang = raw.find('!'); bang != std::string::npos)
            raw.erase(bang);
        auto toks = tokens_of(raw);
        if (toks.empty())
            continue;

        if (toks[0][0] == '#') {
            if (saw_options)
                fail(line_no, "duplicate option line");
            saw_options = true;
            if (toks[0] == "#")
                toks.erase(toks.begin());
            else
                toks[0].erase(0, 1);
            for (std::size_t i = 0; i < toks.size(); ++i) {
                const std::string t = upper(toks[i]);
                if (t.empty())
                    continue;
                if (t == "HZ")
                    unit_to_ghz = 1e-9;
                else if (t == "KHZ")
                    unit_to_ghz = 1e-6;
                else if (t == "MHZ")
                    unit_to_ghz = 1e-3;
                else if (t == "GHZ")
                    unit_to_ghz = 1.0;
                else if (t == "S")
                    ; // scattering parameters, the only supported type
                else if (t == "Y" || t == "Z" || t == "H" || t == "G")
                    fail(line_no, "unsupported parameter type '" + t + "' (only S)");
                else if (t == "RI")
                    ma_format = false;
                else if (t == "MA")
                    ma_format = true;
                else if (t == "DB")
                    fail(line_no, "the DB format is not supported; use RI or MA");
                else if (t == "R") {
                    if (i + 1 >= toks.size())
                        fail(line_no, "option 'R' needs a reference impedance");
                    ts.z0_ohm = parse_double(toks[++i], line_no);
                    if (!(ts.z0_ohm > 0.0))
                        fail(line_no, "reference impedance must be positive");
                } else
                    fail(line_no, "unrecognized option token '" + toks[i] + "'");
            }
            continue;
        }

        if (toks.size() != values_per_row)
            fail(line_no, "expected " + std::to_string(values_per_row) + " values per " +
                              std::to_string(expected_ports) + "-port data row, got " +
                              std::to_string(toks.size()));

        std::vector<double> vals(values_per_row);
        for (std::size_t i = 0; i < values_per_row; ++i)
            vals[i] = parse_double(toks[i], line_no);

        const double f_ghz = vals[0] * unit_to_ghz;
        if (!ts.f_ghz.empty() && !(f_ghz > ts.f_ghz.back()))
            fail(line_no, "frequencies must be strictly ascending");
        ts.f_ghz.push_back(f_ghz);

        std::vector<cplx> row;
        row.reserve((values_per_row - 1) / 2);
        for (std::size_t i = 1; i < values_per_row; i += 2) {
            if (ma_format)
                row.push_back(std::polar(vals[i], vals[i + 1] * M_PI / 180.0));
            else
                row.emplace_back(vals[i], vals[i + 1]);
        }
        ts.rows.push_back(std::move(row));
    }
    if (ts.f_ghz.empty())
        throw Error(errc::parse, "no data rows found");
    return ts;
}

Touchstone parse_touchstone(const std::string& text, int expected_ports) {
    std::istringstream iss(text);
    return parse_touchstone(iss, expected_ports);
}

AdmittanceRecord to_admittance(const Touchstone& ts) {
    if (ts.n_ports != 1)
        throw Error(errc::invalid_argument, "admittance conversion needs a one-port file");
    AdmittanceRecord rec;
    rec.f_ghz = ts.f_ghz;
    rec.y_s.reserve(ts.rows.size());
    for (const auto& row : ts.rows) {
        const cplx s = row[0];
        rec.y_s.push_back((1.0 - s) / (ts.z0_ohm * (1.0 + s)));
    }
    return rec;
}

SweepResult to_sweep(const Touchstone& ts) {
    if (ts.n_ports != 2)
        throw Error(errc::invalid_argument, "sweep conversion needs a two-port file");
    SweepResult s;
    s.f_ghz = ts.f_ghz;
    for (const auto& row : ts.rows) {
        s.s11.push_back(row[0]);
        s.s21.push_back(row[1]);
        s.s12.push_back(row[2]);
        s.s22.push_back(row[3]);
    }
    return s;
}

void write_s1p(std::ostream& out, const AdmittanceRecord& rec, double z0_ohm) {
    validate(rec);
    out << "# GHZ S RI R " << fmt_g(z0_ohm) << "\n";
    for (std::size_t i = 0; i < rec.f_ghz.size(); ++i) {
        const cplx z_scaled = z0_ohm * rec.y_s[i];
        const cplx s = (1.0 - z_scaled) / (1.0 + z_scaled);
        out << fmt_g(rec.f_ghz[i]) << ' ' << fmt_g(s.real()) << ' ' << fmt_g(s.imag()) << "\n";
    }
}

void write_s2p(std::ostream& out, const SweepResult& sweep, double z0_ohm) {
    out << "# GHZ S RI R " << fmt_g(z0_ohm) << "\n";
    for (std::size_t i = 0; i < sweep.f_ghz.size(); ++i) {
        out << fmt_g(sweep.f_ghz[i]);
        for (const auto* v : {&sweep.s11[i], &sweep.s21[i], &sweep.s12[i], &sweep.s22[i]})
            out << ' ' << fmt_g(v->real()) << ' ' << fmt_g(v->imag());
        out << "\n";
    }
}

void write_admittance_csv(std::ostream& out, const AdmittanceRecord& rec) {
    validate(rec);
    out << "frequency_ghz,re_y_s,im_y_s\n";
    for (std::size_t i = 0; i < rec.f_ghz.size(); ++i)
        out << fmt_g(rec.f_ghz[i]) << ',' << fmt_g(rec.y_s[i].real()) << ','
            << fmt_g(rec.y_s[i].imag()) << "\n";
}

AdmittanceRecord parse_admittance_csv(std::istream& in) {
    AdmittanceRecord rec;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        if (raw.empty())
            continue;
        if (line_no == 1 && raw.find("frequency_ghz") != std::string::npos)
            continue;
        std::replace(raw.begin(), raw.end(), ',', ' ');
        auto toks = tokens_of(raw);
        if (toks.size() != 3)
            fail(line_no, "expected 3 CSV columns (frequency_ghz,re_y_s,im_y_s)");
        const double f = parse_double(toks[0], line_no);
        if (!rec.f_ghz.empty() && !(f > rec.f_ghz.back()))
            fail(line_no, "frequencies must be strictly ascending");
        rec.f_ghz.push_back(f);
        rec.y_s.emplace_back(parse_double(toks[1], line_no), parse_double(toks[2], line_no));
    }
    if (rec.f_ghz.empty())
        throw Error(errc::parse, "no data rows found");
    return rec;
}

AdmittanceRecord read_admittance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(errc::io, "cannot open '" + path + "'");
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".s1p")
        return to_admittance(parse_touchstone(in, 1));
    return parse_admittance_csv(in);
}

} // namespace xfl
