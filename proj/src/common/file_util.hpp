#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace testrec {

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

}  // namespace testrec
