#include "sdma/csv.hpp"

#include <cstdio>
#include <fstream>

#include "sdma/types.hpp"

namespace sdma {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns.size())
        throw config_error("CsvTable: row width " + std::to_string(cells.size()) +
                           " does not match " + std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(cells));
}

std::string render_csv(const CsvTable& table) {
    std::string out;
    for (const auto& c : table.comments) out += "# " + c + "\n";
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
    std::error_code ec;
    if (std::filesystem::exists(path, ec))
        throw config_error("refusing to overwrite existing file: " + path.string());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open for writing: " + path.string());
    f << text;
    f.close();
    if (!f) throw config_error("write failed: " + path.string());
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
    write_text_file(render_csv(table), path);
}

void ensure_output_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    if (std::filesystem::exists(dir, ec)) {
        if (!std::filesystem::is_directory(dir, ec))
            throw config_error("output path exists and is not a directory: " + dir.string());
        return;
    }
    if (!std::filesystem::create_directories(dir, ec) || ec)
        throw config_error("cannot create output directory: " + dir.string());
}

}  // namespace sdma
