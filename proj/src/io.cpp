#include "anodiff/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace anodiff::io {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_prefractal_csv(std::ostream& os, const cantor::Prefractal& pf) {
    os << "level,index,left,right,kind\n";
    std::size_t index = 0;
    for (const cantor::Interval& iv : pf.intervals) {
        os << pf.level << ',' << index++ << ',' << g17(iv.left) << ',' << g17(iv.right)
           << ",interval\n";
    }
    int level = 0;
    index = 0;
    for (const cantor::Gap& gap : pf.gaps) {
        if (gap.level != level) {
            level = gap.level;
            index = 0;
        }
        os << gap.level << ',' << index++ << ',' << g17(gap.left) << ',' << g17(gap.right)
           << ",gap\n";
    }
}

void write_msd_csv(std::ostream& os, const scaling::MsdSeries& series) {
    os << "t,msd,stderr,n\n";
    for (const scaling::MsdRecord& r : series.records) {
        os << g17(r.t) << ',' << g17(r.msd) << ',' << g17(r.sem) << ',' << r.n << '\n';
    }
}

scaling::MsdSeries read_msd_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "t,msd,stderr,n") {
        throw std::domain_error("msd csv must start with header t,msd,stderr,n");
    }
    scaling::MsdSeries series;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        scaling::MsdRecord r{};
        std::uintmax_t n = 0;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%ju", &r.t, &r.msd, &r.sem, &n) != 4) {
            throw std::domain_error("malformed msd csv row at line " + std::to_string(lineno));
        }
        r.n = n;
        series.records.push_back(r);
    }
    scaling::validate(series);
    return series;
}

void write_propagator_slice_csv(std::ostream& os, std::span<const double> u,
                                std::span<const double> tau, std::span<const double> w) {
    if (u.size() != tau.size() || u.size() != w.size()) {
        throw std::domain_error("propagator slice columns must have equal length");
    }
    os << "u,tau,W\n";
    for (std::size_t i = 0; i < u.size(); ++i) {
        os << g17(u[i]) << ',' << g17(tau[i]) << ',' << g17(w[i]) << '\n';
    }
}

void atomic_write(const std::filesystem::path& path,
                  const std::function<void(std::ostream&)>& producer) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        try {
            producer(os);
        } catch (...) {
            os.close();
            std::filesystem::remove(tmp);
            throw;
        }
        os.flush();
        if (!os) {
            os.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace anodiff::io
