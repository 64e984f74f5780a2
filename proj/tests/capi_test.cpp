// Exercises the shared library strictly through its C interface.

#include "topicforge/topicforge.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct ScratchDir {
    ScratchDir() {
        path = fs::temp_directory_path() / ("topicforge_capi_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~ScratchDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    fs::path path;
};

std::vector<float> two_blobs(std::size_t per_blob, std::size_t dim) {
    std::mt19937 gen(3);
    std::normal_distribution<float> noise(0.0f, 0.3f);
    std::vector<float> data;
    for (int blob = 0; blob < 2; ++blob)
        for (std::size_t i = 0; i < per_blob; ++i)
            for (std::size_t d = 0; d < dim; ++d) data.push_back((blob ? 8.0f : 0.0f) + noise(gen));
    return data;
}

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
    EXPECT_STREQ(tf_version(), "0.1.0");
    EXPECT_STREQ(tf_status_string(TF_OK), "ok");
    EXPECT_EQ(tf_exit_code(TF_OK), 0);
    EXPECT_EQ(tf_exit_code(TF_ERR_CONFIG), 1);
    EXPECT_EQ(tf_exit_code(TF_ERR_INVALID_ARGUMENT), 1);
    EXPECT_EQ(tf_exit_code(TF_ERR_NUMERIC), 3);
    EXPECT_EQ(tf_exit_code(TF_ERR_IO), 2);
    EXPECT_EQ(tf_exit_code(TF_ERR_HTTP), 2);
}

TEST(CApi, ConfigParseGetSetValidate) {
    tf_config* cfg = nullptr;
    ASSERT_EQ(tf_config_parse("texts = t.txt\nembeddings = e.tfemb\n", "/base", &cfg), TF_OK);
    char buf[256];
    size_t needed = 0;
    ASSERT_EQ(tf_config_get(cfg, "texts", buf, sizeof buf, &needed), TF_OK);
    EXPECT_STREQ(buf, "/base/t.txt");
    EXPECT_EQ(needed, std::strlen("/base/t.txt"));
    ASSERT_EQ(tf_config_get(cfg, "texts", buf, 4, &needed), TF_OK);
    EXPECT_STREQ(buf, "/ba");
    EXPECT_EQ(tf_config_get(cfg, "nope", buf, sizeof buf, &needed), TF_ERR_CONFIG);
    EXPECT_EQ(tf_config_validate(cfg), TF_OK);
    EXPECT_EQ(tf_config_set(cfg, "kmeans_k_min", "9"), TF_OK);
    EXPECT_EQ(tf_config_set(cfg, "kmeans_k_max", "3"), TF_OK);
    EXPECT_EQ(tf_config_validate(cfg), TF_ERR_CONFIG);
    EXPECT_NE(std::string(tf_last_error()).find("kmeans_k"), std::string::npos);
    EXPECT_EQ(tf_config_set(cfg, "bogus", "1"), TF_ERR_CONFIG);
    tf_config_free(cfg);

    EXPECT_EQ(tf_config_parse("texts = a\ntexts = b\n", nullptr, &cfg), TF_ERR_CONFIG);
    EXPECT_EQ(cfg, nullptr);
    EXPECT_EQ(tf_config_parse(nullptr, nullptr, &cfg), TF_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(tf_config_load("/definitely/missing.conf", &cfg), TF_ERR_CONFIG);
}

TEST(CApi, MatrixRoundTrip) {
    ScratchDir dir;
    const std::vector<float> values = {1.5f, -2.0f, 3.25f, 0.0f, 1e-7f, 42.0f};
    tf_matrix* m = nullptr;
    ASSERT_EQ(tf_matrix_create(2, 3, values.data(), &m), TF_OK);
    const std::string path = (dir.path / "m.tfemb").string();
    ASSERT_EQ(tf_matrix_save(m, path.c_str()), TF_OK);
    EXPECT_EQ(fs::file_size(path), 16u + 6u * 4u);
    tf_matrix* back = nullptr;
    ASSERT_EQ(tf_matrix_load(path.c_str(), &back), TF_OK);
    EXPECT_EQ(tf_matrix_rows(back), 2u);
    EXPECT_EQ(tf_matrix_cols(back), 3u);
    EXPECT_EQ(std::memcmp(tf_matrix_data(back), values.data(), values.size() * sizeof(float)), 0);
    tf_matrix_free(m);
    tf_matrix_free(back);

    const float bad[] = {NAN};
    EXPECT_EQ(tf_matrix_create(1, 1, bad, &m), TF_ERR_VALIDATION);
    std::ofstream(dir.path / "junk.tfemb") << "NOTMAGIC........";
    EXPECT_EQ(tf_matrix_load((dir.path / "junk.tfemb").string().c_str(), &m), TF_ERR_FORMAT);
}

TEST(CApi, ReduceAndCluster) {
    const auto data = two_blobs(30, 5);
    tf_matrix* x = nullptr;
    ASSERT_EQ(tf_matrix_create(60, 5, data.data(), &x), TF_OK);
    tf_config* cfg = nullptr;
    ASSERT_EQ(tf_config_parse("umap_epochs = 50\numap_metric = euclidean\n", nullptr, &cfg), TF_OK);
    tf_matrix* y = nullptr;
    ASSERT_EQ(tf_umap_reduce(x, cfg, &y), TF_OK);
    EXPECT_EQ(tf_matrix_rows(y), 60u);
    EXPECT_EQ(tf_matrix_cols(y), 2u);

    std::vector<uint32_t> labels(60);
    double wcss = -1.0;
    ASSERT_EQ(tf_kmeans_fit(y, 2, 5, 42, labels.data(), &wcss), TF_OK);
    EXPECT_GE(wcss, 0.0);
    for (int i = 1; i < 30; ++i) EXPECT_EQ(labels[i], labels[0]);
    for (int i = 31; i < 60; ++i) EXPECT_EQ(labels[i], labels[30]);
    EXPECT_NE(labels[0], labels[30]);

    EXPECT_EQ(tf_kmeans_fit(y, 0, 5, 42, labels.data(), nullptr), TF_ERR_INVALID_ARGUMENT);
    EXPECT_EQ(tf_kmeans_fit(y, 2, 5, 42, nullptr, nullptr), TF_ERR_INVALID_ARGUMENT);
    tf_matrix_free(y);
    tf_matrix_free(x);
    tf_config_free(cfg);
}

TEST(CApi, PipelineRunReportsStageOnFailure) {
    ScratchDir dir;
    std::ofstream(dir.path / "texts.txt") << "uno dos\ntres cuatro\n";
    const auto data = two_blobs(3, 2);
    tf_matrix* m = nullptr;
    ASSERT_EQ(tf_matrix_create(6, 2, data.data(), &m), TF_OK);
    ASSERT_EQ(tf_matrix_save(m, (dir.path / "e.tfemb").string().c_str()), TF_OK);
    tf_matrix_free(m);

    tf_config* cfg = nullptr;
    ASSERT_EQ(tf_config_parse("texts = texts.txt\nembeddings = e.tfemb\nkmeans_k = 2\n", dir.path.string().c_str(),
                              &cfg),
              TF_OK);
    tf_manifest* manifest = nullptr;
    EXPECT_EQ(tf_run_pipeline(cfg, &manifest), TF_ERR_VALIDATION);
    EXPECT_STREQ(tf_last_error_stage(), "embed");
    EXPECT_EQ(manifest, nullptr);
    tf_config_free(cfg);
}

namespace {
int warning_count = 0;
void count_warnings(int level, const char*, void* user) {
    if (level == 1) ++*static_cast<int*>(user);
}
}  // namespace

TEST(CApi, PipelineSucceedsAndLogs) {
    ScratchDir dir;
    std::string texts;
    for (int i = 0; i < 20; ++i) texts += (i < 10 ? "apple banana cherry\n" : "engine wheel brake\n");
    std::ofstream(dir.path / "texts.txt") << texts;
    const auto data = two_blobs(10, 4);
    tf_matrix* m = nullptr;
    ASSERT_EQ(tf_matrix_create(20, 4, data.data(), &m), TF_OK);
    ASSERT_EQ(tf_matrix_save(m, (dir.path / "e.tfemb").string().c_str()), TF_OK);
    tf_matrix_free(m);

    tf_set_log_callback(count_warnings, &warning_count);
    tf_config* cfg = nullptr;
    ASSERT_EQ(tf_config_parse("texts = texts.txt\nembeddings = e.tfemb\numap_neighbors = 5\numap_epochs = 50\n"
                              "kmeans_k = 2\nkmeans_restarts = 3\ntop_n = 3\n",
                              dir.path.string().c_str(), &cfg),
              TF_OK);
    tf_manifest* manifest = nullptr;
    ASSERT_EQ(tf_run_pipeline(cfg, &manifest), TF_OK) << tf_last_error();
    tf_set_log_callback(nullptr, nullptr);
    EXPECT_EQ(tf_manifest_documents(manifest), 20u);
    EXPECT_EQ(tf_manifest_clusters(manifest), 2u);
    EXPECT_GT(tf_manifest_output_count(manifest), 5u);
    EXPECT_EQ(tf_manifest_output(manifest, 1000), nullptr);
    EXPECT_NE(std::string(tf_manifest_json(manifest)).find("\"command\": \"run\""), std::string::npos);
    EXPECT_TRUE(fs::exists(dir.path / "out" / "topics.json"));
    tf_manifest_free(manifest);
    tf_config_free(cfg);
}
