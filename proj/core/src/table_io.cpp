#include "brinkman/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "brinkman/analysis.hpp"

namespace brinkman {

std::string format_sig6(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%#.6g", value);
    return buf;
}

std::string render_table(std::span<const ConvergenceRecord> records, TableFormat format) {
    if (records.empty()) throw IoError("cannot render a table from zero records");

    std::ostringstream out;
    if (format == TableFormat::Csv) {
        out << "R,err_l2_obstacle,rate_l2,err_h1,rate_h1\n";
        for (const ConvergenceRecord& rec : records) {
            out << format_sig6(rec.R) << "," << format_sig6(rec.err_l2_obstacle) << ","
                << (rec.rate_l2 ? format_sig6(*rec.rate_l2) : "") << ","
                << format_sig6(rec.err_h1) << ","
                << (rec.rate_h1 ? format_sig6(*rec.rate_h1) : "") << "\n";
        }
    } else {
        out << "| R | error L2 (obstacle) | rate | error H1 | rate |\n";
        out << "|---|---|---|---|---|\n";
        for (const ConvergenceRecord& rec : records) {
            out << "| " << format_sig6(rec.R) << " | " << format_sig6(rec.err_l2_obstacle)
                << " | " << (rec.rate_l2 ? format_sig6(*rec.rate_l2) : "-") << " | "
                << format_sig6(rec.err_h1) << " | "
                << (rec.rate_h1 ? format_sig6(*rec.rate_h1) : "-") << " |\n";
        }
    }
    return out.str();
}

void write_table(std::span<const ConvergenceRecord> records, const std::filesystem::path& path,
                 TableFormat format) {
    const std::string text = render_table(records, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace brinkman
