#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace sdma {

// Shortest decimal string that round-trips the double exactly (%.17g).
std::string format_double(double v);

// Plain CSV with leading "# " comment lines, then a header row, then data.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // Appends a row; every cell must already be formatted.
    void add_row(std::vector<std::string> cells);
};

std::string render_csv(const CsvTable& table);

// Both writers refuse to overwrite: existing target path is an error, so a
// re-run against a used output directory fails loudly instead of clobbering.
void write_csv(const CsvTable& table, const std::filesystem::path& path);
void write_text_file(const std::string& text, const std::filesystem::path& path);

// Creates the directory (and parents) if missing. A pre-existing directory is
// fine; a pre-existing non-directory at that path is an error.
void ensure_output_dir(const std::filesystem::path& dir);

}  // namespace sdma
