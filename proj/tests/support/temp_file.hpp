#ifndef HCFASP_TESTS_TEMP_FILE_HPP_INCLUDED
#define HCFASP_TESTS_TEMP_FILE_HPP_INCLUDED

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace hcfasp::testing {

/// File under the system temp directory, removed on destruction.
class TempFile {
public:
	explicit TempFile(const std::string& contents, const std::string& suffix = ".lp") {
		static std::atomic<int> counter{0};
		path_ = std::filesystem::temp_directory_path() /
		        ("hcfasp_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix);
		std::ofstream(path_) << contents;
	}
	TempFile(const TempFile&) = delete;
	TempFile& operator=(const TempFile&) = delete;
	~TempFile() {
		std::error_code ec;
		std::filesystem::remove(path_, ec);
	}
	std::string path() const { return path_.string(); }
private:
	std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
	std::ifstream in(path);
	return {std::istreambuf_iterator<char>(in), {}};
}

} // namespace hcfasp::testing

#endif
