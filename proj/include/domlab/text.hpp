#pragma once

#include <string>
#include <string_view>
#include <vector>

// Small line-oriented parsing helpers shared by the text formats.
namespace domlab {

std::vector<std::string> split_lines(std::string_view text);
std::string_view trim(std::string_view s);
// Drops everything from the first '#'.
std::string_view strip_comment(std::string_view line);
std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string> split_words(std::string_view s);
// Throws ParseError when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace domlab
