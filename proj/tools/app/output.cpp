#include "output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "nonmark/error.hpp"

namespace nonmark::app {

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, result.ptr);
}

void Table::add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) {
        row.push_back(format_number(v));
    }
    rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const Provenance& provenance, const Table& table) {
    for (const auto& [key, value] : provenance) {
        out << "# " << key << '=' << value << '\n';
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << (i ? "," : "") << table.columns[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    }
}

Sink::Sink(const std::string& path, std::ostream& fallback) : path_(path), stream_(&fallback) {
    if (!path.empty() && path != "-") {
        file_.open(path, std::ios::binary);
        if (!file_) {
            throw InputError("cannot open '" + path + "' for writing");
        }
        stream_ = &file_;
    }
}

void Sink::close() {
    stream_->flush();
    if (file_.is_open()) {
        file_.close();
        if (!file_) {
            throw InputError("failed writing '" + path_ + "'");
        }
    }
}

} // namespace nonmark::app
