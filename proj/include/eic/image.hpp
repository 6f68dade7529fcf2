#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace eic {

// Pixel grid in planar layout: all of channel 0 row-major, then channel 1,
// then channel 2 (the "stack of matrices" view of RGB). channels is 1
// (grayscale) or 3 (RGB); every value is 8-bit.
struct ImageMatrix {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> values;

    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t element_count() const { return pixel_count() * static_cast<std::size_t>(channels); }

    std::uint8_t at(int channel, int y, int x) const {
        return values[(static_cast<std::size_t>(channel) * height + y) * width + x];
    }
    std::uint8_t& at(int channel, int y, int x) {
        return values[(static_cast<std::size_t>(channel) * height + y) * width + x];
    }

    bool operator==(const ImageMatrix&) const = default;
};

// Decodes a PNG or JPEG file (sniffed by magic bytes, not extension).
// 8-bit grayscale stays 1-channel, any color input becomes 3-channel RGB.
// 16-bit sources and alpha channels raise FormatError("unsupported-image");
// corrupt data raises FormatError("decode").
ImageMatrix load_image(const std::filesystem::path& path);

// Writes PNG (lossless; decodes back bit-identical). A .jpg/.jpeg path is
// refused with FormatError("lossy-output-refused") unless allow_lossy is
// set, because lossy storage silently alters decrypted pixels.
void save_image(const ImageMatrix& image, const std::filesystem::path& path,
                bool allow_lossy = false);

}  // namespace eic
