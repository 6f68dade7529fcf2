#include "eic/image.hpp"

#include "eic/error.hpp"

#include <png.h>

#include <algorithm>
#include <cerrno>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

extern "C" {
#include <jpeglib.h>
}

namespace eic {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("io-error", "cannot open " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (in.bad()) throw FormatError("io-error", "failed reading " + path.string());
    return data;
}

bool has_png_signature(const std::vector<std::uint8_t>& data) {
    static const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
    return data.size() >= 8 && std::memcmp(data.data(), sig, 8) == 0;
}

bool has_jpeg_signature(const std::vector<std::uint8_t>& data) {
    return data.size() >= 3 && data[0] == 0xFF && data[1] == 0xD8 && data[2] == 0xFF;
}

ImageMatrix planar_from_interleaved(int width, int height, int channels,
                                    const std::uint8_t* interleaved) {
    ImageMatrix m;
    m.width = width;
    m.height = height;
    m.channels = channels;
    m.values.resize(m.element_count());
    const std::size_t pixels = m.pixel_count();
    for (std::size_t i = 0; i < pixels; ++i)
        for (int c = 0; c < channels; ++c)
            m.values[static_cast<std::size_t>(c) * pixels + i] =
                interleaved[i * channels + c];
    return m;
}

std::vector<std::uint8_t> interleaved_from_planar(const ImageMatrix& m) {
    std::vector<std::uint8_t> out(m.element_count());
    const std::size_t pixels = m.pixel_count();
    for (std::size_t i = 0; i < pixels; ++i)
        for (int c = 0; c < m.channels; ++c)
            out[i * m.channels + c] = m.values[static_cast<std::size_t>(c) * pixels + i];
    return out;
}

ImageMatrix load_png(const std::vector<std::uint8_t>& data, const std::string& name) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&image, data.data(), data.size())) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw FormatError("decode", name + ": " + msg);
    }
    // image.format now describes the source's natural format.
    if (image.format & PNG_FORMAT_FLAG_ALPHA) {
        png_image_free(&image);
        throw FormatError("unsupported-image", name + ": alpha channel is not supported");
    }
    if (image.format & PNG_FORMAT_FLAG_LINEAR) {
        png_image_free(&image);
        throw FormatError("unsupported-image", name + ": 16-bit depth is not supported");
    }
    const bool color = image.format & PNG_FORMAT_FLAG_COLOR;
    image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const int channels = color ? 3 : 1;
    std::vector<std::uint8_t> interleaved(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, interleaved.data(), 0, nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw FormatError("decode", name + ": " + msg);
    }
    return planar_from_interleaved(static_cast<int>(image.width),
                                   static_cast<int>(image.height), channels,
                                   interleaved.data());
}

void save_png(const ImageMatrix& m, const std::filesystem::path& path) {
    png_image image;
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(m.width);
    image.height = static_cast<png_uint_32>(m.height);
    image.format = m.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const std::vector<std::uint8_t> interleaved = interleaved_from_planar(m);
    if (!png_image_write_to_file(&image, path.string().c_str(), 0, interleaved.data(), 0,
                                 nullptr)) {
        const std::string msg = image.message;
        png_image_free(&image);
        throw FormatError("io-error", path.string() + ": " + msg);
    }
}

struct JpegErrorTrap {
    jpeg_error_mgr pub;
    std::jmp_buf env;
    char message[JMSG_LENGTH_MAX];
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* trap = reinterpret_cast<JpegErrorTrap*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, trap->message);
    std::longjmp(trap->env, 1);
}

// Result codes keep the setjmp frame free of C++ objects that would need
// unwinding; the caller owns all buffers.
enum class JpegStatus { ok, decode_failed, unsupported };

JpegStatus decode_jpeg(const std::uint8_t* data, std::size_t size,
                       std::vector<std::uint8_t>* interleaved, int* width, int* height,
                       int* channels, std::string* error) {
    jpeg_decompress_struct cinfo;
    JpegErrorTrap trap;
    trap.message[0] = '\0';
    cinfo.err = jpeg_std_error(&trap.pub);
    trap.pub.error_exit = jpeg_error_exit;
    if (setjmp(trap.env)) {
        *error = trap.message;
        jpeg_destroy_decompress(&cinfo);
        return JpegStatus::decode_failed;
    }
    jpeg_create_decompress(&cinfo);
    jpeg_mem_src(&cinfo, data, static_cast<unsigned long>(size));
    jpeg_read_header(&cinfo, TRUE);
    if (cinfo.jpeg_color_space == JCS_CMYK || cinfo.jpeg_color_space == JCS_YCCK) {
        *error = "CMYK color space is not supported";
        jpeg_destroy_decompress(&cinfo);
        return JpegStatus::unsupported;
    }
    cinfo.out_color_space =
        cinfo.jpeg_color_space == JCS_GRAYSCALE ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    *width = static_cast<int>(cinfo.output_width);
    *height = static_cast<int>(cinfo.output_height);
    *channels = cinfo.output_components;
    const std::size_t stride =
        static_cast<std::size_t>(*width) * static_cast<std::size_t>(*channels);
    interleaved->resize(stride * static_cast<std::size_t>(*height));
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = interleaved->data() + stride * cinfo.output_scanline;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return JpegStatus::ok;
}

bool encode_jpeg(const std::uint8_t* interleaved, int width, int height, int channels,
                 FILE* out, std::string* error) {
    jpeg_compress_struct cinfo;
    JpegErrorTrap trap;
    trap.message[0] = '\0';
    cinfo.err = jpeg_std_error(&trap.pub);
    trap.pub.error_exit = jpeg_error_exit;
    if (setjmp(trap.env)) {
        *error = trap.message;
        jpeg_destroy_compress(&cinfo);
        return false;
    }
    jpeg_create_compress(&cinfo);
    jpeg_stdio_dest(&cinfo, out);
    cinfo.image_width = static_cast<JDIMENSION>(width);
    cinfo.image_height = static_cast<JDIMENSION>(height);
    cinfo.input_components = channels;
    cinfo.in_color_space = channels == 3 ? JCS_RGB : JCS_GRAYSCALE;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, 90, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    const std::size_t stride =
        static_cast<std::size_t>(width) * static_cast<std::size_t>(channels);
    while (cinfo.next_scanline < cinfo.image_height) {
        JSAMPROW row = const_cast<std::uint8_t*>(interleaved) + stride * cinfo.next_scanline;
        jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
    return true;
}

ImageMatrix load_jpeg(const std::vector<std::uint8_t>& data, const std::string& name) {
    std::vector<std::uint8_t> interleaved;
    int width = 0, height = 0, channels = 0;
    std::string error;
    switch (decode_jpeg(data.data(), data.size(), &interleaved, &width, &height, &channels,
                        &error)) {
        case JpegStatus::decode_failed:
            throw FormatError("decode", name + ": " + error);
        case JpegStatus::unsupported:
            throw FormatError("unsupported-image", name + ": " + error);
        case JpegStatus::ok:
            break;
    }
    return planar_from_interleaved(width, height, channels, interleaved.data());
}

void save_jpeg(const ImageMatrix& m, const std::filesystem::path& path) {
    const std::vector<std::uint8_t> interleaved = interleaved_from_planar(m);
    FILE* out = std::fopen(path.string().c_str(), "wb");
    if (!out) throw FormatError("io-error", "cannot open " + path.string() + ": " +
                                                std::strerror(errno));
    std::string error;
    const bool ok =
        encode_jpeg(interleaved.data(), m.width, m.height, m.channels, out, &error);
    std::fclose(out);
    if (!ok) throw FormatError("io-error", path.string() + ": " + error);
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

void validate_matrix(const ImageMatrix& m) {
    if (m.width < 1 || m.height < 1)
        throw FormatError("unsupported-image", "image dimensions must be at least 1x1");
    if (m.channels != 1 && m.channels != 3)
        throw FormatError("unsupported-image", "channel count must be 1 or 3");
    if (m.values.size() != m.element_count())
        throw FormatError("unsupported-image", "pixel buffer size does not match dimensions");
}

}  // namespace

ImageMatrix load_image(const std::filesystem::path& path) {
    const std::vector<std::uint8_t> data = read_file(path);
    if (has_png_signature(data)) return load_png(data, path.string());
    if (has_jpeg_signature(data)) return load_jpeg(data, path.string());
    throw FormatError("unsupported-image", path.string() + ": not a PNG or JPEG file");
}

void save_image(const ImageMatrix& image, const std::filesystem::path& path,
                bool allow_lossy) {
    validate_matrix(image);
    const std::string ext = lower_extension(path);
    if (ext == ".png") {
        save_png(image, path);
        return;
    }
    if (ext == ".jpg" || ext == ".jpeg") {
        if (!allow_lossy)
            throw FormatError("lossy-output-refused",
                              path.string() +
                                  ": JPEG output would alter pixel values; pass the "
                                  "lossy override to write it anyway");
        save_jpeg(image, path);
        return;
    }
    throw FormatError("unsupported-image",
                      path.string() + ": output must be .png (or .jpg with the override)");
}

}  // namespace eic
