// CSV output with a provenance header.

#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace nonmark::app {

/// Shortest text that reads back to the same double; "nan", "inf", "-inf" otherwise.
std::string format_number(double value);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<double>& values);
};

/// `# key=value` lines, then the column header, then the rows.
void write_csv(std::ostream& out, const Provenance& provenance, const Table& table);

/// Writes to a file, or to `fallback` when the path is empty or "-".
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback);
    std::ostream& stream() noexcept { return *stream_; }
    /// Flushes and throws InputError if the file could not be written.
    void close();

private:
    std::string path_;
    std::ofstream file_;
    std::ostream* stream_;
};

} // namespace nonmark::app
