#ifndef BRINKMAN_TABLE_IO_HPP
#define BRINKMAN_TABLE_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

namespace brinkman {

struct ConvergenceRecord;

enum class TableFormat { Csv, Markdown };

/// Six significant digits with trailing zeros kept (printf %#.6g).
std::string format_sig6(double value);

/// CSV schema: R,err_l2_obstacle,rate_l2,err_h1,rate_h1 with empty rate cells
/// on the first row. Markdown pairs each error column with its rate, using
/// '-' for missing rates. Output is deterministic: identical records produce
/// byte-identical files.
std::string render_table(std::span<const ConvergenceRecord> records, TableFormat format);
void write_table(std::span<const ConvergenceRecord> records, const std::filesystem::path& path,
                 TableFormat format);

}  // namespace brinkman

#endif
