// scenesmith CLI: calibrate -> generate -> evaluate, plus an overlay
// inspector. Exit codes are part of the contract: 0 success, 1 internal
// failure, 2 user/input error.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scenesmith/errors.hpp"
#include "scenesmith/pipeline.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"scenesmith — scene-specific synthetic dataset generator"};
    app.require_subcommand(1);

    scenesmith::CalibrateOptions cal;
    CLI::App* calibrate = app.add_subcommand(
        "calibrate", "Estimate the camera from 2D-3D correspondences");
    calibrate->add_option("--scene", cal.scene_config_path, "Scene config file")->required();
    calibrate->add_option("--correspondences", cal.correspondences_path,
                          "Correspondence CSV (default: config's `correspondences`)");
    calibrate->add_option("--out", cal.out_path,
                          "Calibration output file (default: config's `calibration`)");

    scenesmith::GenerateOptions gen;
    CLI::App* generate =
        app.add_subcommand("generate", "Render a randomized dataset with annotations");
    generate->add_option("--scene", gen.scene_config_path, "Scene config file")->required();
    generate->add_option("--count", gen.count, "Number of frames")->required();
    CLI::Option* seed_opt = generate->add_option("--seed", gen.seed, "Master seed override");
    generate->add_option("--split", gen.split, "train:val ratio (default 80:20)");
    generate->add_option("--preset", gen.preset_name,
                         "Randomization preset (full_dr, no_dr_baseline, ablation_*)");
    generate->add_option("--out", gen.output_dir, "Output directory (default: config's `output`)");
    generate->add_option("--threads", gen.threads,
                         "Worker count (default: SCENESMITH_THREADS, then hardware)");

    scenesmith::EvaluateOptions ev;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Score detections against dataset ground truth");
    evaluate->add_option("--gt", ev.gt_path, "Ground-truth annotation file")->required();
    evaluate->add_option("--pred", ev.pred_path, "Prediction file")->required();
    evaluate->add_option("--iou", ev.iou_thresholds, "IoU thresholds (comma separated)")
        ->delimiter(',');
    evaluate->add_flag("--pose", ev.with_pose, "Also report Acc10 and MedErr");
    evaluate->add_option("--out", ev.out_path, "Write the JSON report here");

    scenesmith::OverlayOptions ov;
    CLI::App* overlay =
        app.add_subcommand("overlay", "Burn annotations into a frame for inspection");
    overlay->add_option("--dataset", ov.dataset_dir, "Dataset directory")->required();
    overlay->add_option("--frame", ov.frame_id, "Frame id")->required();
    overlay->add_option("--out", ov.out_path, "Output image path")->required();

    calibrate->callback([&] {
        const scenesmith::CalibrationResult result = scenesmith::run_calibrate(cal);
        std::printf("calibrated %dx%d: fx %.3f fy %.3f cx %.3f cy %.3f\n",
                    result.camera.intrinsics.width, result.camera.intrinsics.height,
                    result.camera.intrinsics.fx, result.camera.intrinsics.fy,
                    result.camera.intrinsics.cx, result.camera.intrinsics.cy);
        std::printf("rms reprojection: %.9g px over %zu points\n", result.rms_reprojection_px,
                    result.per_point_residuals.size());
    });
    generate->callback([&] {
        gen.seed_given = seed_opt->count() > 0;
        const scenesmith::GenerateSummary s = scenesmith::run_generate(gen);
        std::printf("wrote %d frames (%d train / %d val, %d reused) to %s\n", s.frames,
                    s.train_frames, s.val_frames, s.reused_frames, s.output_dir.c_str());
        std::printf("annotations: %d   excluded (low visibility): %d   dropped placements: %d\n",
                    s.annotations, s.excluded_low_visibility, s.dropped_objects);
        std::printf("config digest: %s\n", s.config_digest.c_str());
    });
    evaluate->callback([&] {
        if (ev.iou_thresholds.empty()) ev.iou_thresholds = {0.5};
        std::string text;
        scenesmith::run_evaluate(ev, &text);
        std::fputs(text.c_str(), stdout);
        if (!ev.out_path.empty()) std::printf("report written to %s\n", ev.out_path.c_str());
    });
    overlay->callback([&] {
        scenesmith::run_overlay(ov);
        std::printf("overlay written to %s\n", ov.out_path.c_str());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic; exit code is ours
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const scenesmith::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
}
