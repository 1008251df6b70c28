from hypersem.faces import FaceParams, render


def test_render_deterministic():
    params = FaceParams(
        yaw=12.0, mouth_curve=-0.4, wrinkle_density=0.7, jaw_width=1.2,
        glasses_opacity=0.6, identity_features=(0.3, -1.2, 0.8), noise_level=0.25,
    )
    assert render(params) == render(params)


def test_no_glasses_group_when_transparent():
    assert "glasses" not in render(FaceParams(glasses_opacity=0.0))
    assert "glasses" not in render(FaceParams(glasses_opacity=0.05))
    assert 'id="glasses"' in render(FaceParams(glasses_opacity=0.06))


def test_wrinkle_stroke_count():
    # the wrinkles group holds exactly round(10 * density) strokes
    doc = render(FaceParams(wrinkle_density=0.5))
    wrinkles = doc.split('id="wrinkles">')[1].split("</g>")[0]
    assert wrinkles.count("<line") == 5


def test_no_wrinkles_at_zero_density():
    assert "wrinkles" not in render(FaceParams(wrinkle_density=0.0))


def test_jitter_scales_with_noise():
    clean = render(FaceParams(noise_level=0.0))
    noisy = render(FaceParams(noise_level=1.0))
    assert "jitter" not in clean
    jitter = noisy.split('id="jitter"')[1].split("</g>")[0]
    assert jitter.count("<line") == 40


def test_params_clamped():
    p = FaceParams(yaw=90.0, mouth_curve=-3.0, wrinkle_density=2.0, jaw_width=0.1,
                   glasses_opacity=7.0, noise_level=-1.0)
    assert p.yaw == 45.0
    assert p.mouth_curve == -1.0
    assert p.wrinkle_density == 1.0
    assert p.jaw_width == 0.6
    assert p.glasses_opacity == 1.0
    assert p.noise_level == 0.0


def test_dict_round_trip():
    p = FaceParams(yaw=-20.0, mouth_curve=0.3, identity_features=(1.0, 2.0))
    assert FaceParams.from_dict(p.to_dict()).to_dict() == p.to_dict()


def test_head_scales_with_jaw_width():
    narrow = render(FaceParams(jaw_width=0.6))
    wide = render(FaceParams(jaw_width=1.4))
    assert 'rx="42"' in narrow     # 70 * 0.6
    assert 'rx="98"' in wide       # 70 * 1.4
