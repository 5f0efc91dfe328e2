#include <fcntl.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "polynorm/io.hpp"

namespace polynorm::io {

namespace {

class DirectoryLock {
  public:
    explicit DirectoryLock(std::filesystem::path file) : file_(std::move(file)) {
        int fd = ::open(file_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
        if (fd < 0)
            throw Error(ErrorKind::Precondition, "run directory is locked (" + file_.string() + " exists)");
        ::close(fd);
    }
    ~DirectoryLock() {
        std::error_code ec;
        std::filesystem::remove(file_, ec);
    }
    DirectoryLock(const DirectoryLock&) = delete;
    DirectoryLock& operator=(const DirectoryLock&) = delete;

  private:
    std::filesystem::path file_;
};

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string NumberFormat::operator()(const Rational& r) const {
    if (!decimal) return polynorm::to_string(r);
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.6f", static_cast<double>(r));
    return buf;
}

std::string format_certificate(const IsometryCertificate& c, const NumberFormat& fmt) {
    return "(" + fmt(c.upper) + "," + fmt(c.lower) + ")";
}

std::string amalgam_summary(const AmalgamRun& run, const NumberFormat& fmt) {
    std::ostringstream out;
    out << "variant " << to_string(run.config.variant) << ", status " << run.status << "\n";
    if (!run.message.empty()) out << "note: " << run.message << "\n";
    if (fmt.decimal) out << "decimal values are display-only approximations\n";
    out << pad("stage", 7) << pad("dim", 5) << pad("eps", 12) << pad("pairs", 7) << pad("triples", 9)
        << pad("worst residual", 16) << pad("worst lower", 14) << "checks\n";
    for (std::size_t n = 0; n < run.stages.size(); ++n) {
        out << pad(run.stages[n]->label, 7) << pad(std::to_string(run.stages[n]->dim), 5);
        if (n == 0) {
            out << pad("-", 12) << pad("-", 7) << pad("-", 9) << pad("-", 16) << pad("-", 14) << "-\n";
            continue;
        }
        const StageLog& log = run.defect_log[n - 1];
        std::optional<Rational> residual, lower;
        bool ok = log.link_cert.isometric();
        for (const auto& p : log.pairs) ok = ok && p.commutes;
        for (const auto& t : log.triples) {
            if (!residual || t.residual > *residual) residual = t.residual;
            if (!lower || t.t_prime_beta.lower < *lower) lower = t.t_prime_beta.lower;
            ok = ok && t.ok();
        }
        out << pad(fmt(log.eps), 12) << pad(std::to_string(log.pairs.size()), 7)
            << pad(std::to_string(log.triples.size()), 9) << pad(residual ? fmt(*residual) : "-", 16)
            << pad(lower ? fmt(*lower) : "-", 14) << (ok ? "PASS" : "FAIL") << "\n";
    }
    if (!run.defect_log.empty())
        out << "product of (1+eps) " << fmt(run.defect_log.back().eps_product) << "\n";
    if (run.composite_cert)
        out << "composite link certificate " << format_certificate(*run.composite_cert, fmt) << "\n";
    if (run.defect_log.empty())
        out << "no checks\n";
    else
        out << "all checks " << (run.all_checks_pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

void write_run_directory(const std::filesystem::path& dir, const AmalgamRun& run, const NumberFormat& fmt) {
    std::filesystem::create_directories(dir);
    DirectoryLock lock(dir / ".lock");
    Json cfg = to_json(run.config);
    Json wrapped;
    wrapped["schema"] = kSchemaVersion;
    for (auto& [k, v] : cfg.items()) wrapped[k] = v;
    write_json_file(dir / "config.json", wrapped);
    write_json_file(dir / "run.json", to_json(run));
    std::ofstream summary(dir / "summary.txt", std::ios::binary);
    if (!summary) throw Error(ErrorKind::Precondition, "cannot write " + (dir / "summary.txt").string());
    summary << amalgam_summary(run, fmt);
}

}  // namespace polynorm::io
